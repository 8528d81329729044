//! Scott topology on finite lattices: open-set membership and enumeration,
//! continuity tests for unary and binary maps, and topological density.
//!
//! On a finite lattice every directed set contains its supremum, so the
//! directed-set condition of a Scott open follows from upper-closure. Both
//! conditions are still evaluated independently at small sizes so the
//! equivalence is exercised, not assumed.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::galois::MonotoneMap;
use crate::generators;
use crate::lattice::{Elem, Lattice};
use crate::ops::BinaryOp;

/// Largest carrier for which `enumerate_scott_opens` will run (2^n subsets).
pub const ENUM_MAX: usize = 20;

/// Largest carrier for which directed subsets are scanned exhaustively in
/// membership and continuity cross-checks.
const SCAN_MAX: usize = 16;

/// The family of all Scott opens of a lattice, canonically ordered by
/// (cardinality, then element indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScottOpens {
    lattice: Arc<Lattice>,
    pub opens: Vec<Vec<Elem>>,
}

impl ScottOpens {
    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.opens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.opens.is_empty()
    }
}

fn is_upper_set(lat: &Lattice, member: &[bool]) -> bool {
    lat.elems().all(|x| {
        !member[x.index()] || lat.elems().all(|y| !lat.leq(x, y) || member[y.index()])
    })
}

fn membership(lat: &Lattice, set: &[Elem]) -> Vec<bool> {
    let mut member = vec![false; lat.len()];
    for e in set {
        member[e.index()] = true;
    }
    member
}

/// Is `set` Scott open: an upper set such that every directed `D` with
/// `sup D` in the set meets it? The second condition is scanned exhaustively
/// for small carriers; for larger ones it holds on any finite lattice
/// because a finite directed set contains its own supremum.
pub fn is_scott_open(lat: &Lattice, set: &[Elem]) -> bool {
    let member = membership(lat, set);
    let upper = is_upper_set(lat, &member);
    let directed_cond = if lat.len() <= SCAN_MAX {
        directed_sup_condition(lat, &member)
    } else {
        true
    };
    debug_assert!(directed_cond, "finite directed sets contain their suprema");
    upper && directed_cond
}

/// Exhaustive check of the directed-set condition: every directed subset
/// whose supremum lies in the set intersects the set. Directed subsets are
/// generated as (maximum, subset of its strict down-set).
fn directed_sup_condition(lat: &Lattice, member: &[bool]) -> bool {
    let n = lat.len();
    for m in lat.elems() {
        let below: Vec<usize> = (0..n)
            .filter(|&i| i != m.index() && lat.leq(Elem(i), m))
            .collect();
        // Every directed set with maximum m has sup m; it always contains m,
        // so the condition can only fail if some directed set avoids the set
        // entirely while its sup lies inside. Scan all subsets anyway.
        for mask in 0u64..(1 << below.len()) {
            let mut d = vec![m];
            for (b, &i) in below.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    d.push(Elem(i));
                }
            }
            let sup = lat.sup(d.iter().copied());
            if member[sup.index()] && !d.iter().any(|e| member[e.index()]) {
                return false;
            }
        }
    }
    true
}

/// All Scott opens of the lattice: exactly its upper sets.
pub fn enumerate_scott_opens(lat: &Arc<Lattice>) -> Result<ScottOpens> {
    let n = lat.len();
    if n > ENUM_MAX {
        return Err(Error::TooLarge { size: n, limit: ENUM_MAX });
    }
    let mut opens = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let member: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        if is_upper_set(lat, &member) {
            opens.push((0..n).filter(|&i| member[i]).map(Elem).collect::<Vec<_>>());
        }
    }
    opens.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    Ok(ScottOpens { lattice: lat.clone(), opens })
}

/// Scott continuity of a unary map: order preservation plus preservation of
/// suprema of directed sets. On finite lattices the two coincide; both are
/// computed (the directed scan up to the size guard) and must agree.
pub fn is_scott_continuous_unary(f: &MonotoneMap) -> bool {
    let monotone = f.is_monotone();
    let scanned = if f.domain().len() <= SCAN_MAX {
        directed_sup_preserved(f)
    } else {
        monotone
    };
    debug_assert_eq!(monotone, scanned);
    monotone && scanned
}

fn directed_sup_preserved(f: &MonotoneMap) -> bool {
    let dom = f.domain();
    let cod = f.codomain();
    let n = dom.len();
    for m in dom.elems() {
        let below: Vec<usize> = (0..n)
            .filter(|&i| i != m.index() && dom.leq(Elem(i), m))
            .collect();
        for mask in 0u64..(1 << below.len()) {
            let mut d = vec![m];
            for (b, &i) in below.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    d.push(Elem(i));
                }
            }
            let sup = dom.sup(d.iter().copied());
            let image_sup = cod.sup(d.iter().map(|&e| f.apply(e)));
            if f.apply(sup) != image_sup {
                return false;
            }
        }
    }
    true
}

/// Scott continuity of a binary table: monotone in each argument with every
/// section continuous, cross-checked against continuity on the product order
/// of the square (directed subsets of the square scanned up to the guard).
pub fn is_scott_continuous_binary(op: &BinaryOp) -> bool {
    let l = op.lattice();
    let mut sections = true;
    'secs: for a in l.elems() {
        let left = MonotoneMap::from_fn(l.clone(), l.clone(), "sec", |x| op.at(x, a));
        let right = MonotoneMap::from_fn(l.clone(), l.clone(), "sec", |y| op.at(a, y));
        if !is_scott_continuous_unary(&left) || !is_scott_continuous_unary(&right) {
            sections = false;
            break 'secs;
        }
    }

    let product_route = product_order_continuous(op);
    debug_assert_eq!(sections, product_route);
    sections && product_route
}

/// The same table viewed as a unary map out of the product lattice `L x L`.
fn product_order_continuous(op: &BinaryOp) -> bool {
    let l = op.lattice();
    let n = l.len();
    if n * n > SCAN_MAX {
        // Monotonicity in the product order; the directed scan is redundant
        // for monotone tables on finite carriers.
        for x1 in l.elems() {
            for y1 in l.elems() {
                for x2 in l.elems() {
                    for y2 in l.elems() {
                        if l.leq(x1, x2) && l.leq(y1, y2) && !l.leq(op.at(x1, y1), op.at(x2, y2)) {
                            return false;
                        }
                    }
                }
            }
        }
        return true;
    }
    let square = Arc::new(generators::product(l, l).expect("guarded size"));
    let decode = |e: Elem| (Elem(e.index() / n), Elem(e.index() % n));
    let as_unary = MonotoneMap::from_fn(square.clone(), l.clone(), "uncurried", |e| {
        let (x, y) = decode(e);
        op.at(x, y)
    });
    is_scott_continuous_unary(&as_unary)
}

/// Does every nonempty Scott open meet `set`? Enumerates the opens when the
/// carrier is small enough; beyond that, uses the fact that every nonempty
/// upper set of a finite lattice contains top.
pub fn is_topologically_dense(lat: &Arc<Lattice>, set: &[Elem]) -> bool {
    let member = membership(lat, set);
    if lat.len() <= ENUM_MAX {
        let opens = enumerate_scott_opens(lat).expect("guarded size");
        opens
            .opens
            .iter()
            .filter(|o| !o.is_empty())
            .all(|o| o.iter().any(|e| member[e.index()]))
    } else {
        member[lat.top().index()]
    }
}

/// Both density readings of a subset, side by side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityReport {
    /// Every strict pair `x < y` of the lattice has some `z` in the subset
    /// with `x < z < y`.
    pub order_dense: bool,
    /// Every nonempty Scott open meets the subset.
    pub topologically_dense: bool,
    /// Did the two verdicts coincide on this instance?
    pub biconditional: bool,
}

/// Evaluate order density and topological density of `set` independently.
/// The equivalence theorem for the two notions assumes a dense order, which
/// no finite lattice with a strict pair satisfies, so the report surfaces
/// raw verdicts instead of asserting agreement.
pub fn check_density_equivalence(lat: &Arc<Lattice>, set: &[Elem]) -> DensityReport {
    let order_dense = lat.is_order_dense_in(set);
    let topologically_dense = is_topologically_dense(lat, set);
    DensityReport {
        order_dense,
        topologically_dense,
        biconditional: order_dense == topologically_dense,
    }
}
