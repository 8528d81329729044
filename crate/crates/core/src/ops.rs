//! Quasi-overlap functions, their induced implications, residuation, and
//! the NP/EP/IP/OP property suite. All checks are exhaustive over the finite
//! carrier and report the first violating tuple in row-major element order.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::generators;
use crate::lattice::{Elem, Lattice};

/// A total binary operation on a lattice, stored row-major: entry
/// `(x, y)` is the value at row `x` (first argument), column `y` (second).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryOp {
    lattice: Arc<Lattice>,
    name: String,
    cells: Vec<Elem>,
}

/// A total binary operation meant to act as an implication. Same layout as
/// [`BinaryOp`]; validation expectations differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Implication {
    lattice: Arc<Lattice>,
    name: String,
    cells: Vec<Elem>,
}

macro_rules! table_impl {
    ($ty:ident) => {
        impl $ty {
            pub fn new(lattice: Arc<Lattice>, name: impl Into<String>, cells: Vec<Elem>) -> Result<Self> {
                let n = lattice.len();
                if cells.len() != n * n {
                    return Err(Error::NotTotal { want: n * n, got: cells.len() });
                }
                if let Some(bad) = cells.iter().find(|e| e.index() >= n) {
                    return Err(Error::UnknownElement(format!("#{}", bad.index())));
                }
                Ok($ty { lattice, name: name.into(), cells })
            }

            pub fn from_fn(
                lattice: Arc<Lattice>,
                name: impl Into<String>,
                mut f: impl FnMut(Elem, Elem) -> Elem,
            ) -> Self {
                let n = lattice.len();
                let mut cells = Vec::with_capacity(n * n);
                for x in lattice.elems() {
                    for y in lattice.elems() {
                        cells.push(f(x, y));
                    }
                }
                $ty { lattice, name: name.into(), cells }
            }

            /// Value at `(x, y)`.
            #[inline]
            pub fn at(&self, x: Elem, y: Elem) -> Elem {
                self.cells[x.index() * self.lattice.len() + y.index()]
            }

            pub fn lattice(&self) -> &Arc<Lattice> {
                &self.lattice
            }

            pub fn name(&self) -> &str {
                &self.name
            }

            pub fn cells(&self) -> &[Elem] {
                &self.cells
            }
        }
    };
}

table_impl!(BinaryOp);
table_impl!(Implication);

impl BinaryOp {
    /// The meet table of a lattice.
    pub fn meet_table(lattice: &Arc<Lattice>) -> Self {
        let l = lattice.clone();
        BinaryOp::from_fn(lattice.clone(), "meet", move |x, y| l.meet(x, y))
    }

    /// The join table of a lattice.
    pub fn join_table(lattice: &Arc<Lattice>) -> Self {
        let l = lattice.clone();
        BinaryOp::from_fn(lattice.clone(), "join", move |x, y| l.join(x, y))
    }
}

/// Verdict of an exhaustive check: holds, or fails with the first violating
/// tuple (element tokens resolve against the table's lattice).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Vec<Elem>>,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict { holds: true, witness: None }
    }

    pub fn fail(witness: Vec<Elem>) -> Self {
        Verdict { holds: false, witness: Some(witness) }
    }
}

/// One axiom verdict inside an [`AxiomReport`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub holds: bool,
    pub witness: Option<Vec<Elem>>,
}

/// Per-axiom verdicts with witnesses for failed axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.holds)
    }
}

fn axiom(axiom: &'static str, witness: Option<Vec<Elem>>) -> AxiomCheck {
    AxiomCheck { axiom, holds: witness.is_none(), witness }
}

/// Check OL1 (commutativity), OL2 (zero iff an argument is zero), OL3
/// (one iff both arguments are one), OL4 (monotone in each argument).
pub fn validate_quasi_overlap(op: &BinaryOp) -> Result<AxiomReport> {
    let l = op.lattice();
    if l.bottom() == l.top() {
        return Err(Error::DegenerateLattice);
    }
    let (bot, top) = (l.bottom(), l.top());

    let ol1 = l.elems().flat_map(|x| l.elems().map(move |y| (x, y))).find_map(|(x, y)| {
        (op.at(x, y) != op.at(y, x)).then(|| vec![x, y])
    });

    let ol2 = l.elems().flat_map(|x| l.elems().map(move |y| (x, y))).find_map(|(x, y)| {
        ((op.at(x, y) == bot) != (x == bot || y == bot)).then(|| vec![x, y])
    });

    let ol3 = l.elems().flat_map(|x| l.elems().map(move |y| (x, y))).find_map(|(x, y)| {
        ((op.at(x, y) == top) != (x == top && y == top)).then(|| vec![x, y])
    });

    let mut ol4 = None;
    'outer: for x1 in l.elems() {
        for x2 in l.elems() {
            if l.leq(x1, x2) {
                for y in l.elems() {
                    if !l.leq(op.at(x1, y), op.at(x2, y)) {
                        ol4 = Some(vec![x1, x2, y]);
                        break 'outer;
                    }
                    if !l.leq(op.at(y, x1), op.at(y, x2)) {
                        ol4 = Some(vec![y, x1, x2]);
                        break 'outer;
                    }
                }
            }
        }
    }

    Ok(AxiomReport {
        checks: vec![
            axiom("OL1", ol1),
            axiom("OL2", ol2),
            axiom("OL3", ol3),
            axiom("OL4", ol4),
        ],
    })
}

/// Check an implication candidate: IM1 antitone in the first argument, IM2
/// nondecreasing in the second, IM3 the boundary cells
/// `I(0,0)=I(0,1)=I(1,1)=1` and `I(1,0)=0`.
pub fn validate_implication(imp: &Implication) -> AxiomReport {
    let l = imp.lattice();
    let (bot, top) = (l.bottom(), l.top());

    let mut im1 = None;
    'a: for x1 in l.elems() {
        for x2 in l.elems() {
            if l.leq(x1, x2) {
                for y in l.elems() {
                    if !l.leq(imp.at(x2, y), imp.at(x1, y)) {
                        im1 = Some(vec![x1, x2, y]);
                        break 'a;
                    }
                }
            }
        }
    }

    let mut im2 = None;
    'b: for y1 in l.elems() {
        for y2 in l.elems() {
            if l.leq(y1, y2) {
                for x in l.elems() {
                    if !l.leq(imp.at(x, y1), imp.at(x, y2)) {
                        im2 = Some(vec![x, y1, y2]);
                        break 'b;
                    }
                }
            }
        }
    }

    let boundary = [
        (bot, bot, top),
        (bot, top, top),
        (top, top, top),
        (top, bot, bot),
    ];
    let im3 = boundary
        .iter()
        .find(|&&(x, y, want)| imp.at(x, y) != want)
        .map(|&(x, y, _)| vec![x, y]);

    AxiomReport {
        checks: vec![axiom("IM1", im1), axiom("IM2", im2), axiom("IM3", im3)],
    }
}

/// The residuum table `I(x,y) = sup { t | O(x,t) <= y }`, for any total
/// binary operation. The set is nonempty whenever `O(x,0) = 0`.
pub fn residuum_table(op: &BinaryOp) -> Implication {
    let l = op.lattice().clone();
    let name = format!("I_{}", op.name());
    let lat = l.clone();
    Implication::from_fn(l, name, move |x, y| {
        lat.sup(lat.elems().filter(|&t| lat.leq(op.at(x, t), y)))
    })
}

/// The implication induced by a validated quasi-overlap. Fails with
/// `NotQuasiOverlap` naming the first broken axiom.
pub fn induced_implication(op: &BinaryOp) -> Result<Implication> {
    let report = validate_quasi_overlap(op)?;
    if let Some(bad) = report.first_failure() {
        return Err(Error::NotQuasiOverlap(bad.axiom.to_string()));
    }
    Ok(residuum_table(op))
}

fn assert_same_lattice(a: &Arc<Lattice>, b: &Arc<Lattice>) {
    assert!(
        a.as_ref() == b.as_ref(),
        "tables reference different lattices: '{}' vs '{}'",
        a.name(),
        b.name()
    );
}

/// Residuation principle: `O(x,z) <= y  iff  z <= I(x,y)` over all triples.
///
/// Panics if the tables reference different lattices.
pub fn check_residuation(op: &BinaryOp, imp: &Implication) -> Verdict {
    assert_same_lattice(op.lattice(), imp.lattice());
    let l = op.lattice();
    for x in l.elems() {
        for y in l.elems() {
            for z in l.elems() {
                if l.leq(op.at(x, z), y) != l.leq(z, imp.at(x, y)) {
                    return Verdict::fail(vec![x, y, z]);
                }
            }
        }
    }
    Verdict::pass()
}

/// Does `sup R(x,y)` itself satisfy `O(x, sup R) <= y` for every cell, i.e.
/// is the supremum in the residuum definition always a maximum?
pub fn max_attained(op: &BinaryOp) -> Verdict {
    let l = op.lattice();
    for x in l.elems() {
        for y in l.elems() {
            let s = l.sup(l.elems().filter(|&t| l.leq(op.at(x, t), y)));
            if !l.leq(op.at(x, s), y) {
                return Verdict::fail(vec![x, y]);
            }
        }
    }
    Verdict::pass()
}

/// NP: `I(1,y) = y` for all y.
pub fn check_np(imp: &Implication) -> Verdict {
    let l = imp.lattice();
    let top = l.top();
    match l.elems().find(|&y| imp.at(top, y) != y) {
        Some(y) => Verdict::fail(vec![y]),
        None => Verdict::pass(),
    }
}

/// IP: `I(x,x) = 1` for all x.
pub fn check_ip(imp: &Implication) -> Verdict {
    let l = imp.lattice();
    let top = l.top();
    match l.elems().find(|&x| imp.at(x, x) != top) {
        Some(x) => Verdict::fail(vec![x]),
        None => Verdict::pass(),
    }
}

/// OP: `x <= y  iff  I(x,y) = 1`, for all pairs.
pub fn check_op(imp: &Implication) -> Verdict {
    let l = imp.lattice();
    let top = l.top();
    for x in l.elems() {
        for y in l.elems() {
            if l.leq(x, y) != (imp.at(x, y) == top) {
                return Verdict::fail(vec![x, y]);
            }
        }
    }
    Verdict::pass()
}

/// EP: `I(x, I(y,z)) = I(y, I(x,z))` over all triples.
pub fn check_ep(imp: &Implication) -> Verdict {
    let l = imp.lattice();
    for x in l.elems() {
        for y in l.elems() {
            for z in l.elems() {
                if imp.at(x, imp.at(y, z)) != imp.at(y, imp.at(x, z)) {
                    return Verdict::fail(vec![x, y, z]);
                }
            }
        }
    }
    Verdict::pass()
}

/// Is 1 a (two-sided) neutral element of the operation?
pub fn has_neutral_one(op: &BinaryOp) -> Verdict {
    let l = op.lattice();
    let top = l.top();
    match l.elems().find(|&x| op.at(x, top) != x || op.at(top, x) != x) {
        Some(x) => Verdict::fail(vec![x]),
        None => Verdict::pass(),
    }
}

/// Deflation: `O(x,1) <= x` for all x.
pub fn is_deflationary(op: &BinaryOp) -> Verdict {
    let l = op.lattice();
    let top = l.top();
    match l.elems().find(|&x| !l.leq(op.at(x, top), x)) {
        Some(x) => Verdict::fail(vec![x]),
        None => Verdict::pass(),
    }
}

/// Associativity over all triples.
pub fn is_associative(op: &BinaryOp) -> Verdict {
    let l = op.lattice();
    for x in l.elems() {
        for y in l.elems() {
            for z in l.elems() {
                if op.at(op.at(x, y), z) != op.at(x, op.at(y, z)) {
                    return Verdict::fail(vec![x, y, z]);
                }
            }
        }
    }
    Verdict::pass()
}

/// Exchange: `O(x, O(y,z)) = O(y, O(x,z))` over all triples.
pub fn satisfies_exchange(op: &BinaryOp) -> Verdict {
    let l = op.lattice();
    for x in l.elems() {
        for y in l.elems() {
            for z in l.elems() {
                if op.at(x, op.at(y, z)) != op.at(y, op.at(x, z)) {
                    return Verdict::fail(vec![x, y, z]);
                }
            }
        }
    }
    Verdict::pass()
}

/// Does every second-argument section `x0 |-> O(x0, .)` preserve all joins,
/// including the empty one? On a finite lattice the empty set plus all pairs
/// decide every finite join.
pub fn sections_preserve_joins(op: &BinaryOp) -> Verdict {
    let l = op.lattice();
    let bot = l.bottom();
    for x0 in l.elems() {
        if op.at(x0, bot) != bot {
            return Verdict::fail(vec![x0, bot]);
        }
        for y1 in l.elems() {
            for y2 in l.elems() {
                if op.at(x0, l.join(y1, y2)) != l.join(op.at(x0, y1), op.at(x0, y2)) {
                    return Verdict::fail(vec![x0, y1, y2]);
                }
            }
        }
    }
    Verdict::pass()
}

/// Size guard for quasi-overlap enumeration.
pub const ENUM_MAX: usize = 6;

/// All quasi-overlap tables on `lat`, yielded in lexicographic order of the
/// flattened cell vector (cells compared by element index). Search prunes on
/// forced boundary cells and partial monotonicity but every leaf is passed
/// through [`validate_quasi_overlap`] before being yielded.
pub fn enumerate_quasi_overlaps(lat: &Arc<Lattice>) -> Result<QuasiOverlaps> {
    let n = lat.len();
    if lat.bottom() == lat.top() {
        return Err(Error::DegenerateLattice);
    }
    if n > ENUM_MAX {
        return Err(Error::TooLarge { size: n, limit: ENUM_MAX });
    }
    let (bot, top) = (lat.bottom(), lat.top());
    // Free cells: upper triangle by index, neither argument bottom, not (top, top).
    let free: Vec<(Elem, Elem)> = lat
        .elems()
        .flat_map(|x| lat.elems().map(move |y| (x, y)))
        .filter(|&(x, y)| x <= y && x != bot && y != bot && !(x == top && y == top))
        .collect();
    let domain: Vec<Elem> = lat.elems().filter(|&v| v != bot && v != top).collect();
    let mut cells = vec![None; n * n];
    for e in lat.elems() {
        cells[bot.index() * n + e.index()] = Some(bot);
        cells[e.index() * n + bot.index()] = Some(bot);
    }
    cells[top.index() * n + top.index()] = Some(top);
    Ok(QuasiOverlaps {
        lat: lat.clone(),
        free,
        domain,
        cells,
        choice: Vec::new(),
        yielded: 0,
        exhausted: false,
    })
}

/// Lazy backtracking enumerator returned by [`enumerate_quasi_overlaps`].
pub struct QuasiOverlaps {
    lat: Arc<Lattice>,
    free: Vec<(Elem, Elem)>,
    domain: Vec<Elem>,
    cells: Vec<Option<Elem>>,
    /// Per-depth index into `domain` of the current choice.
    choice: Vec<usize>,
    yielded: usize,
    exhausted: bool,
}

impl QuasiOverlaps {
    fn set(&mut self, depth: usize, v: Elem) {
        let n = self.lat.len();
        let (x, y) = self.free[depth];
        self.cells[x.index() * n + y.index()] = Some(v);
        self.cells[y.index() * n + x.index()] = Some(v);
    }

    fn clear(&mut self, depth: usize) {
        let n = self.lat.len();
        let (x, y) = self.free[depth];
        self.cells[x.index() * n + y.index()] = None;
        self.cells[y.index() * n + x.index()] = None;
    }

    /// Monotonicity of the candidate value against every already-set cell.
    fn consistent(&self, depth: usize, v: Elem) -> bool {
        let n = self.lat.len();
        let l = &self.lat;
        let (x, y) = self.free[depth];
        for a in l.elems() {
            for b in l.elems() {
                if let Some(w) = self.cells[a.index() * n + b.index()] {
                    if l.leq(a, x) && l.leq(b, y) && !l.leq(w, v) {
                        return false;
                    }
                    if l.leq(x, a) && l.leq(y, b) && !l.leq(v, w) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn leaf(&mut self) -> Option<BinaryOp> {
        let cells: Vec<Elem> = self.cells.iter().map(|c| c.unwrap()).collect();
        let op = BinaryOp {
            lattice: self.lat.clone(),
            name: format!("qo{}", self.yielded),
            cells,
        };
        let report = validate_quasi_overlap(&op).expect("nondegenerate by construction");
        if report.all_hold() {
            self.yielded += 1;
            Some(op)
        } else {
            None
        }
    }
}

impl Iterator for QuasiOverlaps {
    type Item = BinaryOp;

    fn next(&mut self) -> Option<BinaryOp> {
        if self.exhausted {
            return None;
        }
        // The lattice with two elements has no free cells: a single table.
        if self.free.is_empty() {
            self.exhausted = true;
            return self.leaf();
        }
        // Resume: advance the deepest choice, then extend depth-first.
        let mut depth = self.choice.len();
        let mut next_try = if depth == 0 {
            0
        } else {
            depth -= 1;
            self.clear(depth);
            self.choice.pop().unwrap() + 1
        };
        loop {
            let mut advanced = false;
            for vi in next_try..self.domain.len() {
                let v = self.domain[vi];
                if self.consistent(depth, v) {
                    self.set(depth, v);
                    self.choice.push(vi);
                    depth += 1;
                    advanced = true;
                    break;
                }
            }
            if advanced {
                if depth == self.free.len() {
                    if let Some(op) = self.leaf() {
                        return Some(op);
                    }
                    // Leaf rejected by full validation: backtrack in place.
                    depth -= 1;
                    self.clear(depth);
                    next_try = self.choice.pop().unwrap() + 1;
                } else {
                    next_try = 0;
                }
            } else {
                if depth == 0 {
                    self.exhausted = true;
                    return None;
                }
                depth -= 1;
                self.clear(depth);
                next_try = self.choice.pop().unwrap() + 1;
            }
        }
    }
}

/// One residuation failure found by [`residuation_failure_search`].
#[derive(Clone, Debug)]
pub struct ResiduationFailure {
    pub op: BinaryOp,
    /// Index of the operator in canonical enumeration order on its lattice.
    pub op_index: usize,
    pub x: Elem,
    pub y: Elem,
}

/// Outcome of the catalog-wide search for quasi-overlaps whose residuum
/// supremum is not attained.
#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub lattices_scanned: usize,
    pub ops_scanned: usize,
    pub failures: Vec<ResiduationFailure>,
}

/// Sweep every quasi-overlap on every catalog lattice of at most `max_size`
/// elements, reporting each operator whose `sup R(x,y)` is not a maximum.
pub fn residuation_failure_search(max_size: usize) -> Result<SearchOutcome> {
    let mut outcome = SearchOutcome {
        lattices_scanned: 0,
        ops_scanned: 0,
        failures: Vec::new(),
    };
    for lat in generators::search_catalog(max_size)? {
        let lat = Arc::new(lat);
        outcome.lattices_scanned += 1;
        for (op_index, op) in enumerate_quasi_overlaps(&lat)?.enumerate() {
            outcome.ops_scanned += 1;
            let verdict = max_attained(&op);
            if let Some(w) = verdict.witness {
                outcome.failures.push(ResiduationFailure {
                    op,
                    op_index,
                    x: w[0],
                    y: w[1],
                });
            }
        }
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{chain, diamond};

    fn arc(l: crate::lattice::Lattice) -> Arc<Lattice> {
        Arc::new(l)
    }

    #[test]
    fn meet_on_c3_is_a_quasi_overlap() {
        let l = arc(chain(3).unwrap());
        let report = validate_quasi_overlap(&BinaryOp::meet_table(&l)).unwrap();
        assert!(report.all_hold());
    }

    #[test]
    fn meet_on_m3_fails_ol2() {
        let l = arc(diamond(3).unwrap());
        let report = validate_quasi_overlap(&BinaryOp::meet_table(&l)).unwrap();
        let ol2 = &report.checks[1];
        assert_eq!(ol2.axiom, "OL2");
        assert!(!ol2.holds);
        let w = ol2.witness.as_ref().unwrap();
        assert_eq!((l.token(w[0]), l.token(w[1])), ("a", "b"));
        assert!(report.checks[0].holds, "meet is commutative");
    }

    #[test]
    fn broken_c2_table_fails_ol2_and_ol3() {
        let l = arc(chain(2).unwrap());
        let bot = l.bottom();
        let op = BinaryOp::new(l.clone(), "broken", vec![bot, bot, bot, bot]).unwrap();
        let report = validate_quasi_overlap(&op).unwrap();
        assert!(!report.checks[1].holds);
        assert!(!report.checks[2].holds);
    }

    #[test]
    fn degenerate_lattice_is_rejected() {
        let l = arc(chain(1).unwrap());
        let op = BinaryOp::meet_table(&l);
        assert_eq!(validate_quasi_overlap(&op), Err(Error::DegenerateLattice));
        assert!(matches!(enumerate_quasi_overlaps(&l), Err(Error::DegenerateLattice)));
    }

    #[test]
    fn enumeration_counts_on_chains() {
        let c2 = arc(chain(2).unwrap());
        let ops: Vec<_> = enumerate_quasi_overlaps(&c2).unwrap().collect();
        assert_eq!(ops.len(), 1);
        assert_eq!(ops[0].cells(), BinaryOp::meet_table(&c2).cells());

        let c3 = arc(chain(3).unwrap());
        let ops: Vec<_> = enumerate_quasi_overlaps(&c3).unwrap().collect();
        assert_eq!(ops.len(), 1);
        assert_eq!(ops[0].cells(), BinaryOp::meet_table(&c3).cells());
    }

    #[test]
    fn enumeration_is_lexicographic_and_guarded() {
        let b2 = arc(diamond(2).unwrap());
        let ops: Vec<_> = enumerate_quasi_overlaps(&b2).unwrap().collect();
        assert_eq!(ops.len(), 2);
        let a = b2.elem("a").unwrap();
        let b = b2.elem("b").unwrap();
        // Interior cells of the first table are all `a`, of the second all `b`.
        assert_eq!(ops[0].at(a, a), a);
        assert_eq!(ops[0].at(b, b), a);
        assert_eq!(ops[1].at(a, a), b);
        let big = arc(chain(7).unwrap());
        assert!(matches!(
            enumerate_quasi_overlaps(&big),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn induced_implication_on_c3_meet() {
        let l = arc(chain(3).unwrap());
        let imp = induced_implication(&BinaryOp::meet_table(&l)).unwrap();
        let (z, m, t) = (l.bottom(), l.elem("c1").unwrap(), l.top());
        assert_eq!(imp.at(m, z), z);
        assert_eq!(imp.at(m, m), t);
        assert_eq!(imp.at(t, m), m);
        // Boundary cells per the derivation lemma.
        assert_eq!(imp.at(z, z), t);
        assert_eq!(imp.at(z, t), t);
        assert_eq!(imp.at(t, t), t);
        assert_eq!(imp.at(t, z), z);
    }

    #[test]
    fn meet_on_b2_is_not_derivable_but_residuum_is_heyting() {
        let l = arc(diamond(2).unwrap());
        let meet = BinaryOp::meet_table(&l);
        assert_eq!(induced_implication(&meet), Err(Error::NotQuasiOverlap("OL2".into())));
        let imp = residuum_table(&meet);
        let a = l.elem("a").unwrap();
        let b = l.elem("b").unwrap();
        assert_eq!(imp.at(a, b), b);
        assert_eq!(imp.at(b, a), a);
        assert_eq!(imp.at(a, l.bottom()), b);
        assert!(check_residuation(&meet, &imp).holds);
        assert!(max_attained(&meet).holds);
    }

    #[test]
    fn residuation_fails_for_constant_top_implication() {
        let l = arc(chain(2).unwrap());
        let meet = BinaryOp::meet_table(&l);
        let top = l.top();
        let one = Implication::from_fn(l.clone(), "one", |_, _| top);
        let v = check_residuation(&meet, &one);
        assert!(!v.holds);
        let w = v.witness.unwrap();
        let toks: Vec<&str> = w.iter().map(|&e| l.token(e)).collect();
        assert_eq!(toks, ["c1", "c0", "c1"]);
    }

    #[test]
    fn max_attained_examples() {
        let l = arc(chain(3).unwrap());
        assert!(max_attained(&BinaryOp::meet_table(&l)).holds);
        // Every quasi-overlap on a chain attains its residuum maxima.
        for k in 2..=5 {
            let c = arc(chain(k).unwrap());
            for op in enumerate_quasi_overlaps(&c).unwrap() {
                assert!(max_attained(&op).holds);
            }
        }
        // The first quasi-overlap on B2 does not: witness (1, a).
        let b2 = arc(diamond(2).unwrap());
        let op = enumerate_quasi_overlaps(&b2).unwrap().next().unwrap();
        let v = max_attained(&op);
        assert!(!v.holds);
        let w = v.witness.unwrap();
        assert_eq!((b2.token(w[0]), b2.token(w[1])), ("1", "a"));
    }

    #[test]
    fn implication_validation_examples() {
        let l = arc(chain(3).unwrap());
        let imp = induced_implication(&BinaryOp::meet_table(&l)).unwrap();
        assert!(validate_implication(&imp).all_hold());

        let top = l.top();
        let one = Implication::from_fn(l.clone(), "one", |_, _| top);
        let report = validate_implication(&one);
        let im3 = &report.checks[2];
        assert!(!im3.holds, "boundary I(1,0)=0 must fail");

        let proj = Implication::from_fn(l.clone(), "proj1", |x, _| x);
        assert!(!validate_implication(&proj).all_hold());
    }

    #[test]
    fn property_checks_on_c3_meet() {
        let l = arc(chain(3).unwrap());
        let meet = BinaryOp::meet_table(&l);
        let imp = induced_implication(&meet).unwrap();
        assert!(check_np(&imp).holds);
        assert!(check_ip(&imp).holds);
        assert!(check_op(&imp).holds);
        assert!(check_ep(&imp).holds);
        assert!(has_neutral_one(&meet).holds);
        assert!(is_deflationary(&meet).holds);
        assert!(is_associative(&meet).holds);
        assert!(satisfies_exchange(&meet).holds);
    }

    #[test]
    fn second_projection_satisfies_ep() {
        let l = arc(chain(3).unwrap());
        let proj2 = Implication::from_fn(l.clone(), "proj2", |_, y| y);
        assert!(check_ep(&proj2).holds);
    }

    #[test]
    fn ep_on_b2_meet_residuum() {
        let l = arc(diamond(2).unwrap());
        let meet = BinaryOp::meet_table(&l);
        let imp = residuum_table(&meet);
        assert!(check_ep(&imp).holds);
    }

    #[test]
    fn search_verdicts() {
        let none = residuation_failure_search(3).unwrap();
        assert!(none.failures.is_empty());
        let found = residuation_failure_search(4).unwrap();
        assert_eq!(found.failures.len(), 2);
        assert_eq!(found.failures[0].op.lattice().name(), "M2");
    }
}
