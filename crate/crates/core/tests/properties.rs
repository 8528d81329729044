//! Property tests over randomly sampled inputs; the exhaustive counterparts
//! live in `laws.rs`.

use std::sync::Arc;

use proptest::prelude::*;

use quasilat::automorphism::enumerate_automorphisms;
use quasilat::galois::{characterization_agrees, MonotoneMap};
use quasilat::generators::{boolean, diamond, interval_grid, search_catalog, Recipe};
use quasilat::lattice::{Elem, FiniteNet, Lattice};
use quasilat::ops::{validate_quasi_overlap, BinaryOp};

fn fixture_lattices() -> Vec<Arc<Lattice>> {
    let mut out: Vec<Arc<Lattice>> = search_catalog(5).unwrap().into_iter().map(Arc::new).collect();
    out.push(Arc::new(boolean(3).unwrap()));
    out.push(Arc::new(interval_grid(2).unwrap()));
    out
}

prop_compose! {
    fn lattice_and_indices(max_len: usize)
        (lat_idx in 0..fixture_lattices().len(), len in 1..=max_len)
        (lat_idx in Just(lat_idx), idxs in prop::collection::vec(0..fixture_lattices()[lat_idx].len(), len))
        -> (Arc<Lattice>, Vec<usize>)
    {
        (fixture_lattices()[lat_idx].clone(), idxs)
    }
}

proptest! {
    #[test]
    fn net_limits_are_ordered((lat, idxs) in lattice_and_indices(8)) {
        let values: Vec<Elem> = idxs.iter().map(|&i| lat.get(i).unwrap()).collect();
        let net = FiniteNet::new(values);
        let lo = lat.liminf(&net).unwrap();
        let hi = lat.limsup(&net).unwrap();
        prop_assert!(lat.leq(lo, hi));
    }

    #[test]
    fn directed_subsets_contain_their_sup((lat, idxs) in lattice_and_indices(6)) {
        let set: Vec<Elem> = idxs.iter().map(|&i| lat.get(i).unwrap()).collect();
        if lat.is_directed(&set) {
            let sup = lat.sup(set.iter().copied());
            prop_assert!(set.contains(&sup));
        }
        if lat.is_filtered(&set) {
            let inf = lat.inf(set.iter().copied());
            prop_assert!(set.contains(&inf));
        }
    }

    #[test]
    fn overlap_witnesses_recheck(cells_code in prop::collection::vec(0usize..4, 16)) {
        let lat = Arc::new(diamond(2).unwrap());
        let cells: Vec<Elem> = cells_code.iter().map(|&i| lat.get(i).unwrap()).collect();
        let op = BinaryOp::new(lat.clone(), "t", cells).unwrap();
        let report = validate_quasi_overlap(&op).unwrap();
        let (bot, top) = (lat.bottom(), lat.top());
        for check in &report.checks {
            match (&check.witness, check.holds) {
                (None, held) => prop_assert!(held),
                (Some(w), held) => {
                    prop_assert!(!held);
                    let violates = match check.axiom {
                        "OL1" => op.at(w[0], w[1]) != op.at(w[1], w[0]),
                        "OL2" => (op.at(w[0], w[1]) == bot) != (w[0] == bot || w[1] == bot),
                        "OL3" => (op.at(w[0], w[1]) == top) != (w[0] == top && w[1] == top),
                        // Witness is (x1, x2, y) for the first axis or
                        // (y, x1, x2) for the second; accept either reading.
                        "OL4" => {
                            (lat.leq(w[0], w[1]) && !lat.leq(op.at(w[0], w[2]), op.at(w[1], w[2])))
                                || (lat.leq(w[1], w[2])
                                    && !lat.leq(op.at(w[0], w[1]), op.at(w[0], w[2])))
                        }
                        other => panic!("unexpected axiom {other}"),
                    };
                    prop_assert!(violates, "witness fails to violate {}", check.axiom);
                }
            }
        }
    }

    #[test]
    fn conjugating_any_table_preserves_axiom_verdicts(cells_code in prop::collection::vec(0usize..4, 16)) {
        let lat = Arc::new(diamond(2).unwrap());
        let cells: Vec<Elem> = cells_code.iter().map(|&i| lat.get(i).unwrap()).collect();
        let op = BinaryOp::new(lat.clone(), "t", cells).unwrap();
        let swap = enumerate_automorphisms(&lat).unwrap().remove(1);
        let conj = BinaryOp::from_fn(lat.clone(), "t_conj", |x, y| {
            swap.apply_inverse(op.at(swap.apply(x), swap.apply(y)))
        });
        let before = validate_quasi_overlap(&op).unwrap();
        let after = validate_quasi_overlap(&conj).unwrap();
        for (b, a) in before.checks.iter().zip(&after.checks) {
            prop_assert_eq!(b.axiom, a.axiom);
            prop_assert_eq!(b.holds, a.holds);
        }
    }

    #[test]
    fn characterization_verdicts_always_agree(
        f_code in prop::collection::vec(0usize..4, 4),
        g_code in prop::collection::vec(0usize..4, 4),
    ) {
        let lat = Arc::new(diamond(2).unwrap());
        let f_vals: Vec<Elem> = f_code.iter().map(|&i| lat.get(i).unwrap()).collect();
        let g_vals: Vec<Elem> = g_code.iter().map(|&i| lat.get(i).unwrap()).collect();
        let f = MonotoneMap::new(lat.clone(), lat.clone(), "f", f_vals).unwrap();
        let g = MonotoneMap::new(lat.clone(), lat.clone(), "g", g_vals).unwrap();
        let report = characterization_agrees(&f, &g).unwrap();
        prop_assert!(report.all_agree());
    }

    #[test]
    fn recipe_lattices_round_trip(which in 0usize..6, k in 1usize..5) {
        let recipe = match which {
            0 => Recipe::Chain(k),
            1 => Recipe::Boolean(k.min(4)),
            2 => Recipe::Diamond(k),
            3 => Recipe::IntervalGrid(k),
            4 => Recipe::Product(Box::new(Recipe::Chain(k)), Box::new(Recipe::Chain(2))),
            _ => Recipe::Product(Box::new(Recipe::Diamond(2)), Box::new(Recipe::Chain(k))),
        };
        let lat = recipe.build().unwrap();
        let text = quasilat::format::serialize_lattice(&lat);
        let back = quasilat::format::parse_lattice(&text).unwrap();
        prop_assert_eq!(&back, &lat);
        prop_assert_eq!(quasilat::format::serialize_lattice(&back), text);
    }
}
