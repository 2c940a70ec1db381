//! DOT rendering of the Hasse multigraph: one node per object grouped into
//! same-rank clusters, one edge per nondecomposable morphism with its name
//! and sign as label.

use std::collections::BTreeMap;

use crate::category::Category;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn hasse_dot(c: &Category) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=box];\n");
    let mut by_rank: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for o in c.objects() {
        by_rank.entry(c.rank(o).0).or_default().push(o.0);
    }
    for (rank, objs) in &by_rank {
        out.push_str(&format!("  {{ rank=same; // rank {rank}\n"));
        for &o in objs {
            out.push_str(&format!(
                "    n{o} [label=\"{}\"];\n",
                escape(&c.object(crate::category::ObjId(o)).name)
            ));
        }
        out.push_str("  }\n");
    }
    let mut edges = c.hasse();
    edges.sort_by_key(|&(_, _, m)| m);
    for (src, dst, m) in edges {
        let label = match c.sign(m) {
            Some(s) => format!("{} ({s})", c.morphism(m).name),
            None => c.morphism(m).name.clone(),
        };
        out.push_str(&format!(
            "  n{} -> n{} [label=\"{}\"];\n",
            src.0,
            dst.0,
            escape(&label)
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::{build_category, Presentation};
    use crate::category::Sign;

    #[test]
    fn parallel_edges_appear_twice() {
        let mut p = Presentation::default();
        p.object("P", 0, Some(Sign::Plus));
        p.object("C", 1, None);
        p.arrow("cw", "P", "C", Some(Sign::Plus));
        p.arrow("ccw", "P", "C", Some(Sign::Minus));
        let c = build_category(&p).unwrap();
        let dot = hasse_dot(&c);
        assert!(dot.contains("cw (+)"));
        assert!(dot.contains("ccw (-)"));
        assert_eq!(dot, hasse_dot(&c));
    }
}
