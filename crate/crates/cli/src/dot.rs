//! Graphviz export of the 1-skeleton.

use std::fmt::Write;

use gammacx_core::blowup::BlowupComplex;

/// Region as a string of sides, `+` or `-` per partition (`*` with none).
pub fn region_sides(b: &BlowupComplex, r: usize) -> String {
    let k = b.partitions().len();
    if k == 0 {
        return String::from("*");
    }
    (0..k).map(|i| if b.regions()[r] >> i & 1 == 1 { '-' } else { '+' }).collect()
}

/// Directed multigraph: one node per region, one arrow per edge from its
/// base end to its tip, labeled by the edge label.
pub fn one_skeleton(b: &BlowupComplex) -> String {
    let mut s = String::from("digraph blowup {\n");
    for r in 0..b.regions().len() {
        writeln!(s, "  r{r} [label=\"{}\"];", region_sides(b, r)).unwrap();
    }
    for e in b.cells(1) {
        let (from, to) = b.endpoints(*e);
        writeln!(s, "  r{from} -> r{to} [label=\"{}\"];", b.label_name(b.edge_label(*e))).unwrap();
    }
    s.push_str("}\n");
    s
}
