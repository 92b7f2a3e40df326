use std::fmt::Write;

use super::ast::SlirProgram;

/// Prints a program in canonical form: two-space indentation, one statement
/// per line, a blank line between methods and between classes, LF endings.
pub fn print_slir(program: &SlirProgram) -> String {
    let mut out = String::new();
    for (ci, class) in program.classes.iter().enumerate() {
        if ci > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "class {} {{", class.name);
        for (mi, method) in class.methods.iter().enumerate() {
            if mi > 0 {
                out.push('\n');
            }
            let _ = writeln!(out, "  method {}({}) {{", method.name, method.params.join(", "));
            for stmt in &method.statements {
                let _ = writeln!(out, "    {stmt}");
            }
            out.push_str("  }\n");
        }
        out.push_str("}\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::parse_slir;
    use super::*;

    #[test]
    fn empty_program_prints_nothing() {
        assert_eq!(print_slir(&SlirProgram::default()), "");
    }

    #[test]
    fn minimal_document_canonical_form() {
        let p = parse_slir("class A { method m() { return } }").unwrap();
        let printed = print_slir(&p);
        assert_eq!(printed, "class A {\n  method m() {\n    return\n  }\n}\n");
        assert_eq!(print_slir(&parse_slir(&printed).unwrap()), printed);
    }

    #[test]
    fn labels_and_escapes_survive() {
        let src = "class A {\n  method m(c) {\n    s = const \"a\\\"b\\\\c\\n\"\n    if c goto L\n    L: return s\n  }\n}\n";
        let p = parse_slir(src).unwrap();
        assert_eq!(print_slir(&p), src);
    }
}
