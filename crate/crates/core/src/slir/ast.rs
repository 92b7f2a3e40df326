use std::fmt;

/// A parsed SLIR document: classes in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SlirProgram {
    pub classes: Vec<SlirClass>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlirClass {
    /// Fully-qualified dotted name, e.g. `com.example.Main`.
    pub name: String,
    pub methods: Vec<SlirMethod>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlirMethod {
    pub name: String,
    pub params: Vec<String>,
    pub statements: Vec<Stmt>,
}

/// One statement. Its index is its position in [`SlirMethod::statements`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stmt {
    pub label: Option<String>,
    pub kind: StmtKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Literal {
    Str(String),
    Int(i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StmtKind {
    ConstAssign { target: String, value: Literal },
    OpAssign { target: String, args: Vec<String> },
    CallAssign { target: String, callee: String, args: Vec<String> },
    Call { callee: String, args: Vec<String> },
    FieldLoad { target: String, field: String },
    FieldStore { field: String, value: String },
    If { cond: String, target: String },
    Goto { target: String },
    Return { value: Option<String> },
}

/// Words that cannot be used as locals, labels or method names.
pub const KEYWORDS: &[&str] = &[
    "class", "method", "const", "op", "call", "getfield", "putfield", "if", "goto", "return",
];

impl Stmt {
    pub fn new(kind: StmtKind) -> Self {
        Stmt { label: None, kind }
    }

    pub fn labeled(label: impl Into<String>, kind: StmtKind) -> Self {
        Stmt { label: Some(label.into()), kind }
    }
}

impl StmtKind {
    /// The local written by this statement, if any.
    pub fn defined_local(&self) -> Option<&str> {
        match self {
            StmtKind::ConstAssign { target, .. }
            | StmtKind::OpAssign { target, .. }
            | StmtKind::CallAssign { target, .. }
            | StmtKind::FieldLoad { target, .. } => Some(target),
            _ => None,
        }
    }

    /// Locals read by this statement, in operand order (may repeat).
    pub fn used_locals(&self) -> Vec<&str> {
        match self {
            StmtKind::OpAssign { args, .. }
            | StmtKind::CallAssign { args, .. }
            | StmtKind::Call { args, .. } => args.iter().map(String::as_str).collect(),
            StmtKind::FieldStore { value, .. } => vec![value],
            StmtKind::If { cond, .. } => vec![cond],
            StmtKind::Return { value: Some(v) } => vec![v],
            _ => Vec::new(),
        }
    }

    pub fn uses(&self, local: &str) -> bool {
        self.used_locals().contains(&local)
    }

    /// Call signature for `Call`/`CallAssign`.
    pub fn call_signature(&self) -> Option<&str> {
        match self {
            StmtKind::CallAssign { callee, .. } | StmtKind::Call { callee, .. } => Some(callee),
            _ => None,
        }
    }

    pub fn call_args(&self) -> &[String] {
        match self {
            StmtKind::CallAssign { args, .. } | StmtKind::Call { args, .. } => args,
            _ => &[],
        }
    }

    pub fn jump_target(&self) -> Option<&str> {
        match self {
            StmtKind::If { target, .. } | StmtKind::Goto { target } => Some(target),
            _ => None,
        }
    }
}

impl SlirMethod {
    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.statements
            .iter()
            .position(|s| s.label.as_deref() == Some(label))
    }
}

impl SlirProgram {
    pub fn class(&self, name: &str) -> Option<&SlirClass> {
        self.classes.iter().find(|c| c.name == name)
    }

    /// Resolves a call signature `<class>.<method>` to a method defined in
    /// this program, returning `(class index, method index)`.
    pub fn resolve_call(&self, signature: &str) -> Option<(usize, usize)> {
        let (class, method) = signature.rsplit_once('.')?;
        let ci = self.classes.iter().position(|c| c.name == class)?;
        let mi = self.classes[ci]
            .methods
            .iter()
            .position(|m| m.name == method)?;
        Some((ci, mi))
    }

    /// Iterates `(class, method)` pairs in program order.
    pub fn methods(&self) -> impl Iterator<Item = (&SlirClass, &SlirMethod)> {
        self.classes
            .iter()
            .flat_map(|c| c.methods.iter().map(move |m| (c, m)))
    }

    pub fn statement_count(&self) -> usize {
        self.methods().map(|(_, m)| m.statements.len()).sum()
    }

    /// Concatenates programs; the caller is responsible for class-name
    /// uniqueness (re-validate with [`super::validate`]).
    pub fn merge(programs: impl IntoIterator<Item = SlirProgram>) -> SlirProgram {
        SlirProgram {
            classes: programs.into_iter().flat_map(|p| p.classes).collect(),
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Int(i) => write!(f, "{i}"),
            Literal::Str(s) => {
                f.write_str("\"")?;
                for ch in s.chars() {
                    match ch {
                        '"' => f.write_str("\\\"")?,
                        '\\' => f.write_str("\\\\")?,
                        '\n' => f.write_str("\\n")?,
                        '\t' => f.write_str("\\t")?,
                        '\r' => f.write_str("\\r")?,
                        c => write!(f, "{c}")?,
                    }
                }
                f.write_str("\"")
            }
        }
    }
}

impl fmt::Display for StmtKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StmtKind::ConstAssign { target, value } => write!(f, "{target} = const {value}"),
            StmtKind::OpAssign { target, args } => write!(f, "{target} = op({})", args.join(", ")),
            StmtKind::CallAssign { target, callee, args } => {
                write!(f, "{target} = call {callee}({})", args.join(", "))
            }
            StmtKind::Call { callee, args } => write!(f, "call {callee}({})", args.join(", ")),
            StmtKind::FieldLoad { target, field } => write!(f, "{target} = getfield {field}"),
            StmtKind::FieldStore { field, value } => write!(f, "putfield {field} {value}"),
            StmtKind::If { cond, target } => write!(f, "if {cond} goto {target}"),
            StmtKind::Goto { target } => write!(f, "goto {target}"),
            StmtKind::Return { value: None } => f.write_str("return"),
            StmtKind::Return { value: Some(v) } => write!(f, "return {v}"),
        }
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(label) = &self.label {
            write!(f, "{label}: ")?;
        }
        write!(f, "{}", self.kind)
    }
}
