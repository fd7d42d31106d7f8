use dil3::format::{parse_edge_list, parse_path, parse_periodic, parse_render_state, write_edge_list, write_periodic};
use dil3_core::dilation::PeriodicSpec;
use dil3_core::{Edge, GraphPatch, Point};
use proptest::prelude::*;

fn arb_edge() -> impl Strategy<Value = Edge> {
    (-50i32..50, -50i32..50, -3i32..=3, -3i32..=3)
        .prop_filter_map("nonzero", |(x, y, dx, dy)| Edge::new(Point::new(x, y), Point::new(x + dx, y + dy)))
}

proptest! {
    #[test]
    fn edge_lists_round_trip(edges in prop::collection::vec(arb_edge(), 0..40)) {
        let s: GraphPatch = edges.into_iter().collect();
        prop_assert_eq!(parse_edge_list(&write_edge_list(&s)).unwrap(), s);
    }

    #[test]
    fn unit_step_specs_round_trip(edges in prop::collection::vec((-5i32..5, -5i32..5, 0usize..4), 1..12)) {
        let dirs = [(1, 0), (1, 1), (0, 1), (-1, 1)];
        let mut list: Vec<Edge> = Vec::new();
        for (x, y, k) in edges {
            let e = Edge::new(Point::new(x, y), Point::new(x + dirs[k].0, y + dirs[k].1)).unwrap();
            if !list.contains(&e) {
                list.push(e);
            }
        }
        let spec = PeriodicSpec { t1: Point::new(3, 1), t2: Point::new(-1, 4), edges: list, variants: Vec::new() };
        prop_assert_eq!(parse_periodic(&write_periodic(&spec)).unwrap(), spec);
    }

    #[test]
    fn path_literals_round_trip(steps in prop::collection::vec(0usize..8, 1..10)) {
        let dirs = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)];
        let mut vs = vec![Point::ORIGIN];
        for k in steps {
            let next = *vs.last().unwrap() + Point::new(dirs[k].0, dirs[k].1);
            if vs.contains(&next) {
                break;
            }
            vs.push(next);
        }
        prop_assume!(vs.len() >= 2);
        let text: Vec<String> = vs.iter().map(|p| format!("{},{}", p.x, p.y)).collect();
        prop_assert_eq!(parse_path(&text.join(" ")).unwrap().vertices, vs);
    }

    #[test]
    fn parsers_reject_garbage_without_panicking(src in "[ -~\n]{0,80}") {
        let _ = parse_edge_list(&src);
        let _ = parse_periodic(&src);
        let _ = parse_render_state(&src);
        let _ = parse_path(&src);
    }
}
