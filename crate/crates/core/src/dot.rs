//! Graphviz output.

use std::fmt::Write;

use crate::germoid::{FinGroupoid, GermGroupoid};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One node per unit and one edge `src -> rng` per non-unit arrow.
pub fn groupoid_dot(g: &FinGroupoid, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    for u in 0..g.unit_count() {
        writeln!(out, "  u{u} [label={}];", quote(g.unit_label(u))).unwrap();
    }
    for a in (0..g.arrow_count()).filter(|&a| !g.is_unit_arrow(a)) {
        writeln!(
            out,
            "  u{} -> u{} [label={}];",
            g.src(a),
            g.rng(a),
            quote(g.arrow_label(a))
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// Edges are labelled by the semigroup element representing each germ.
pub fn germ_groupoid_dot(g: &GermGroupoid) -> String {
    groupoid_dot(g.groupoid(), "germs")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germoid::germ_groupoid;
    use crate::invsgp::FinInverseSemigroup;
    use crate::semilattice::x_tight;

    #[test]
    fn tight_i2() {
        let s = FinInverseSemigroup::symmetric_inverse_monoid(2).unwrap();
        let g = germ_groupoid(&s, &x_tight(s.semilattice())).unwrap();
        let dot = germ_groupoid_dot(&g);
        assert_eq!(dot.matches("[label=").count(), 4);
        assert_eq!(dot.matches("->").count(), 2);
        assert!(dot.contains("\"(1↦2)\""));
        assert_eq!(quote("a\"b"), "\"a\\\"b\"");
    }
}
