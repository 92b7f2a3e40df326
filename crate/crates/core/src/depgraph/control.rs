use std::collections::BTreeSet;

use super::cfg::Cfg;
use super::postdom::{augmented_successors, PostDomTree};

/// Control-dependence pairs `(controller, controlled)` between statement
/// indices.
///
/// For each CFG edge `a -> b`, every node on the post-dominator tree path
/// from `b` up to (excluding) `ipdom(a)` is control dependent on `a`.
/// Entry is never reported as a controller.
pub fn control_deps(cfg: &Cfg) -> BTreeSet<(usize, usize)> {
    let succ = augmented_successors(cfg);
    let tree = PostDomTree::compute(&succ, cfg.exit());
    let mut out = BTreeSet::new();
    for (a, targets) in succ.iter().enumerate().take(cfg.statement_count()) {
        if targets.len() < 2 {
            continue;
        }
        let stop = tree.ipdom(a);
        for &b in targets {
            let mut runner = Some(b);
            while let Some(r) = runner {
                if Some(r) == stop || r == cfg.exit() {
                    break;
                }
                out.insert((a, r));
                runner = tree.ipdom(r);
            }
        }
    }
    out
}
