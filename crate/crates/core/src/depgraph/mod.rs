//! Control-flow graphs, control and data dependence, and the program
//! dependence graph.

mod cfg;
mod control;
mod data;
mod pdg;
mod postdom;

pub use cfg::{build_cfg, Cfg, CfgEdge, CfgEdgeKind, CfgNode};
pub use control::control_deps;
pub use data::{data_deps, DataDep, DefSite, ReachingDefs};
pub use pdg::{build_pdg, EdgeKind, NodeId, Pdg, PdgEdge, PdgWarning, Provenance, StmtId};
pub use postdom::{augmented_successors, PostDomTree};
