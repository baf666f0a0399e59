use proptest::prelude::*;
use shellwalk_core::{Graph, GraphBuilder, Label};

fn arb_edges() -> impl Strategy<Value = Vec<(u8, u8)>> {
    proptest::collection::vec((0u8..40, 0u8..40), 1..150)
}

fn build(edges: &[(u8, u8)]) -> Graph {
    let mut b = GraphBuilder::new();
    for &(x, y) in edges {
        b.add_edge(Label::Int(x as u64), Label::Int(y as u64));
    }
    b.build().0
}

fn sorted_degrees(g: &Graph) -> Vec<usize> {
    let mut d: Vec<usize> = g.nodes().map(|u| g.degree(u)).collect();
    d.sort_unstable();
    d
}

proptest! {
    #[test]
    fn loaded_graphs_are_simple_and_symmetric(edges in arb_edges()) {
        let g = build(&edges);
        let mut degree_sum = 0;
        for u in g.nodes() {
            let nb = g.neighbors(u);
            prop_assert!(nb.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(!nb.contains(&u));
            for &v in nb {
                prop_assert!(g.has_edge(v, u));
            }
            degree_sum += g.degree(u);
        }
        prop_assert_eq!(degree_sum, 2 * g.edge_count());
    }

    #[test]
    fn canonical_edges_rebuild_the_same_shape(edges in arb_edges()) {
        let g = build(&edges);
        let canon: Vec<(u8, u8)> = g
            .edges()
            .map(|(u, v)| match (g.label(u), g.label(v)) {
                (Label::Int(a), Label::Int(b)) => (*a as u8, *b as u8),
                _ => unreachable!(),
            })
            .collect();
        let h = build(&canon);
        // Nodes seen only in self-loops vanish from the canonical list.
        let isolated = g.nodes().filter(|&u| g.degree(u) == 0).count();
        prop_assert_eq!(h.node_count() + isolated, g.node_count());
        prop_assert_eq!(h.edge_count(), g.edge_count());
        let mut dg = sorted_degrees(&g);
        dg.retain(|&d| d > 0);
        prop_assert_eq!(sorted_degrees(&h), dg);
    }

    #[test]
    fn largest_component_is_connected_and_induced(edges in arb_edges()) {
        let g = build(&edges);
        let lcc = g.largest_connected_component().unwrap();
        prop_assert!(lcc.is_connected());
        let (comp, count) = g.components();
        let mut sizes = vec![0; count];
        for c in comp { sizes[c as usize] += 1; }
        prop_assert_eq!(lcc.node_count(), *sizes.iter().max().unwrap());
        for (u, v) in lcc.edges() {
            let (gu, gv) = (g.find(lcc.label(u)).unwrap(), g.find(lcc.label(v)).unwrap());
            prop_assert!(g.has_edge(gu, gv));
        }
        for u in lcc.nodes() {
            let gu = g.find(lcc.label(u)).unwrap();
            prop_assert_eq!(lcc.degree(u), g.degree(gu));
        }
    }
}
