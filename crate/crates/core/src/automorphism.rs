//! Order automorphisms of finite lattices and their action on operators by
//! conjugation, plus the closure-operator pair derived from residuated
//! conjugated operators.
//!
//! On a finite lattice an order isomorphism is automatically continuous for
//! the Scott topology in both directions, so enumeration filters on order
//! isomorphism alone.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::galois::MonotoneMap;
use crate::lattice::{Elem, Lattice};
use crate::ops::{
    self, induced_implication, max_attained, residuum_table, BinaryOp, Implication, Verdict,
};

/// Size guard for automorphism enumeration.
pub const ENUM_MAX: usize = 10;

/// An order automorphism: a bijection with `x <= y  iff  rho(x) <= rho(y)`.
/// Fixing bottom and top is a consequence, checked at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    lattice: Arc<Lattice>,
    perm: Vec<usize>,
    inv: Vec<usize>,
}

impl Automorphism {
    pub fn identity(lat: &Arc<Lattice>) -> Self {
        let perm: Vec<usize> = (0..lat.len()).collect();
        Automorphism { lattice: lat.clone(), inv: perm.clone(), perm }
    }

    /// Build from the image list `images[i] = rho(element i)`, validating
    /// bijectivity and order isomorphism.
    pub fn from_images(lat: &Arc<Lattice>, images: &[Elem]) -> Result<Self> {
        let n = lat.len();
        if images.len() != n {
            return Err(Error::NotTotal { want: n, got: images.len() });
        }
        let perm: Vec<usize> = images.iter().map(|e| e.index()).collect();
        let mut inv = vec![usize::MAX; n];
        for (i, &p) in perm.iter().enumerate() {
            if p >= n {
                return Err(Error::UnknownElement(format!("#{p}")));
            }
            if inv[p] != usize::MAX {
                return Err(Error::NotAutomorphism(format!(
                    "not injective at '{}'",
                    lat.token(Elem(p))
                )));
            }
            inv[p] = i;
        }
        for x in lat.elems() {
            for y in lat.elems() {
                if lat.leq(x, y) != lat.leq(Elem(perm[x.index()]), Elem(perm[y.index()])) {
                    return Err(Error::NotAutomorphism(format!(
                        "order not preserved on ('{}', '{}')",
                        lat.token(x),
                        lat.token(y)
                    )));
                }
            }
        }
        let auto = Automorphism { lattice: lat.clone(), perm, inv };
        debug_assert_eq!(auto.apply(lat.bottom()), lat.bottom());
        debug_assert_eq!(auto.apply(lat.top()), lat.top());
        Ok(auto)
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        Elem(self.perm[x.index()])
    }

    #[inline]
    pub fn apply_inverse(&self, x: Elem) -> Elem {
        Elem(self.inv[x.index()])
    }

    pub fn images(&self) -> Vec<Elem> {
        self.perm.iter().map(|&p| Elem(p)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `(self . other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        if self.lattice.as_ref() != other.lattice.as_ref() {
            return Err(Error::LatticeMismatch(
                self.lattice.name().to_string(),
                other.lattice.name().to_string(),
            ));
        }
        let perm: Vec<usize> = (0..self.perm.len()).map(|i| self.perm[other.perm[i]]).collect();
        let inv: Vec<usize> = (0..self.perm.len()).map(|i| other.inv[self.inv[i]]).collect();
        Ok(Automorphism { lattice: self.lattice.clone(), perm, inv })
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism {
            lattice: self.lattice.clone(),
            perm: self.inv.clone(),
            inv: self.perm.clone(),
        }
    }

    pub fn to_map(&self) -> MonotoneMap {
        MonotoneMap::from_fn(self.lattice.clone(), self.lattice.clone(), "rho", |x| self.apply(x))
    }
}

/// All order automorphisms, identity first, then ascending by image list.
pub fn enumerate_automorphisms(lat: &Arc<Lattice>) -> Result<Vec<Automorphism>> {
    let n = lat.len();
    if n > ENUM_MAX {
        return Err(Error::TooLarge { size: n, limit: ENUM_MAX });
    }
    let mut found = Vec::new();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    backtrack(lat, &mut perm, &mut used, 0, &mut found);
    Ok(found)
}

fn backtrack(
    lat: &Arc<Lattice>,
    perm: &mut Vec<usize>,
    used: &mut Vec<bool>,
    depth: usize,
    found: &mut Vec<Automorphism>,
) {
    let n = lat.len();
    if depth == n {
        let images: Vec<Elem> = perm.iter().map(|&p| Elem(p)).collect();
        found.push(Automorphism::from_images(lat, &images).expect("filtered during search"));
        return;
    }
    for cand in 0..n {
        if used[cand] {
            continue;
        }
        let ok = (0..depth).all(|j| {
            lat.leq(Elem(j), Elem(depth)) == lat.leq(Elem(perm[j]), Elem(cand))
                && lat.leq(Elem(depth), Elem(j)) == lat.leq(Elem(cand), Elem(perm[j]))
        });
        if ok {
            perm[depth] = cand;
            used[cand] = true;
            backtrack(lat, perm, used, depth + 1, found);
            used[cand] = false;
            perm[depth] = usize::MAX;
        }
    }
}

/// The conjugated operator `O^rho(x,y) = rho^-1(O(rho x, rho y))`.
/// Requires a valid quasi-overlap; the result is one as well.
pub fn conjugate_op(op: &BinaryOp, rho: &Automorphism) -> Result<BinaryOp> {
    if op.lattice().as_ref() != rho.lattice().as_ref() {
        return Err(Error::LatticeMismatch(
            op.lattice().name().to_string(),
            rho.lattice().name().to_string(),
        ));
    }
    let report = ops::validate_quasi_overlap(op)?;
    if let Some(bad) = report.first_failure() {
        return Err(Error::NotQuasiOverlap(bad.axiom.to_string()));
    }
    let conj = BinaryOp::from_fn(
        op.lattice().clone(),
        format!("{}_conj", op.name()),
        |x, y| rho.apply_inverse(op.at(rho.apply(x), rho.apply(y))),
    );
    debug_assert!(ops::validate_quasi_overlap(&conj).is_ok_and(|r| r.all_hold()));
    Ok(conj)
}

/// Cellwise conjugation of an implication table.
pub fn conjugate_implication(imp: &Implication, rho: &Automorphism) -> Result<Implication> {
    if imp.lattice().as_ref() != rho.lattice().as_ref() {
        return Err(Error::LatticeMismatch(
            imp.lattice().name().to_string(),
            rho.lattice().name().to_string(),
        ));
    }
    Ok(Implication::from_fn(
        imp.lattice().clone(),
        format!("{}_conj", imp.name()),
        |x, y| rho.apply_inverse(imp.at(rho.apply(x), rho.apply(y))),
    ))
}

/// Does conjugating the induced implication coincide with inducing from the
/// conjugated operator? Compares the two routes cellwise.
pub fn check_coincide(op: &BinaryOp, rho: &Automorphism) -> Result<Verdict> {
    let via_conjugation = conjugate_implication(&induced_implication(op)?, rho)?;
    let via_induction = induced_implication(&conjugate_op(op, rho)?)?;
    let l = op.lattice();
    for x in l.elems() {
        for y in l.elems() {
            if via_conjugation.at(x, y) != via_induction.at(x, y) {
                return Ok(Verdict::fail(vec![x, y]));
            }
        }
    }
    Ok(Verdict::pass())
}

fn residuated_conjugate(op: &BinaryOp, rho: &Automorphism) -> Result<(BinaryOp, Implication)> {
    let conj = conjugate_op(op, rho)?;
    if !max_attained(&conj).holds {
        return Err(Error::NotResiduated);
    }
    let imp = residuum_table(&conj);
    Ok((conj, imp))
}

/// `phi_z(x) = I_{O^rho}(x, z)`: the residual of the second-argument section
/// of the conjugated operator, evaluated at `z`.
pub fn closure_phi(op: &BinaryOp, rho: &Automorphism, z: Elem) -> Result<MonotoneMap> {
    let (_, imp) = residuated_conjugate(op, rho)?;
    let l = op.lattice().clone();
    Ok(MonotoneMap::from_fn(
        l.clone(),
        l,
        format!("phi_{}", op.lattice().token(z)),
        |x| imp.at(x, z),
    ))
}

/// `psi_z(y) = sup { t | O^rho(t, y) <= z }`: the residual of the
/// first-argument section. Commutativity (OL1) makes it coincide with
/// `phi_z`; the coincidence is asserted.
pub fn closure_psi(op: &BinaryOp, rho: &Automorphism, z: Elem) -> Result<MonotoneMap> {
    let (conj, _) = residuated_conjugate(op, rho)?;
    let l = op.lattice().clone();
    let psi = MonotoneMap::from_fn(
        l.clone(),
        l.clone(),
        format!("psi_{}", op.lattice().token(z)),
        |y| l.sup(l.elems().filter(|&t| l.leq(conj.at(t, y), z))),
    );
    debug_assert_eq!(psi.values(), closure_phi(op, rho, z)?.values());
    Ok(psi)
}

/// Monotone / idempotent / inflationary verdicts for a unary self-map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosedOpReport {
    pub monotone: bool,
    pub idempotent: bool,
    pub inflationary: bool,
}

impl ClosedOpReport {
    pub fn is_closed(&self) -> bool {
        self.monotone && self.idempotent && self.inflationary
    }
}

/// Report the three closure-operator conditions separately.
///
/// Panics unless the map is a self-map.
pub fn check_closed_operator(f: &MonotoneMap) -> ClosedOpReport {
    assert!(f.is_self_map(), "closure conditions need a self-map");
    let l = f.domain();
    ClosedOpReport {
        monotone: f.is_monotone(),
        idempotent: l.elems().all(|x| f.apply(f.apply(x)) == f.apply(x)),
        inflationary: l.elems().all(|x| l.leq(x, f.apply(x))),
    }
}

/// Everything the psi/phi pair is claimed to satisfy, measured per instance.
#[derive(Clone, Debug)]
pub struct PsiPhiReport {
    /// Antitone adjunction: `x <= psi_z(y)  iff  y <= phi_z(x)`.
    pub galois: Verdict,
    /// Closure verdicts for `psi_z . phi_z`.
    pub psi_after_phi: ClosedOpReport,
    /// Closure verdicts for `phi_z . psi_z`.
    pub phi_after_psi: ClosedOpReport,
    /// Literal claim: `psi_z` itself is a closed operator.
    pub psi_closed: ClosedOpReport,
    /// Literal claim: `phi_z` itself is a closed operator.
    pub phi_closed: ClosedOpReport,
}

/// Evaluate the adjunction and closure claims for `psi_z`, `phi_z` derived
/// from a residuated conjugated operator.
pub fn check_psi_phi_adjunction(
    op: &BinaryOp,
    rho: &Automorphism,
    z: Elem,
) -> Result<PsiPhiReport> {
    let psi = closure_psi(op, rho, z)?;
    let phi = closure_phi(op, rho, z)?;
    let l = op.lattice();

    let mut galois = Verdict::pass();
    'scan: for x in l.elems() {
        for y in l.elems() {
            if l.leq(x, psi.apply(y)) != l.leq(y, phi.apply(x)) {
                galois = Verdict::fail(vec![x, y]);
                break 'scan;
            }
        }
    }

    let psi_after_phi = MonotoneMap::from_fn(l.clone(), l.clone(), "psi.phi", |x| {
        psi.apply(phi.apply(x))
    });
    let phi_after_psi = MonotoneMap::from_fn(l.clone(), l.clone(), "phi.psi", |y| {
        phi.apply(psi.apply(y))
    });

    Ok(PsiPhiReport {
        galois,
        psi_after_phi: check_closed_operator(&psi_after_phi),
        phi_after_psi: check_closed_operator(&phi_after_psi),
        psi_closed: check_closed_operator(&psi),
        phi_closed: check_closed_operator(&phi),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{chain, diamond};
    use crate::ops::enumerate_quasi_overlaps;

    fn b2() -> Arc<Lattice> {
        Arc::new(diamond(2).unwrap())
    }

    #[test]
    fn chains_are_rigid() {
        for k in 2..=5 {
            let l = Arc::new(chain(k).unwrap());
            let autos = enumerate_automorphisms(&l).unwrap();
            assert_eq!(autos.len(), 1);
            assert!(autos[0].is_identity());
        }
    }

    #[test]
    fn b2_has_the_atom_swap() {
        let l = b2();
        let autos = enumerate_automorphisms(&l).unwrap();
        assert_eq!(autos.len(), 2);
        assert!(autos[0].is_identity());
        let a = l.elem("a").unwrap();
        let b = l.elem("b").unwrap();
        assert_eq!(autos[1].apply(a), b);
        assert_eq!(autos[1].apply(b), a);
    }

    #[test]
    fn m3_has_all_atom_permutations() {
        let l = Arc::new(diamond(3).unwrap());
        let autos = enumerate_automorphisms(&l).unwrap();
        assert_eq!(autos.len(), 6);
        assert!(autos[0].is_identity());
        // Closed under composition.
        for r1 in &autos {
            for r2 in &autos {
                let c = r1.compose(r2).unwrap();
                assert!(autos.contains(&c));
            }
        }
    }

    #[test]
    fn enumeration_guard() {
        let l = Arc::new(chain(11).unwrap());
        assert!(matches!(
            enumerate_automorphisms(&l),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn group_laws_on_b2() {
        let l = b2();
        let autos = enumerate_automorphisms(&l).unwrap();
        let swap = &autos[1];
        assert!(swap.compose(swap).unwrap().is_identity());
        assert!(Automorphism::identity(&l).inverse().is_identity());
        for r in &autos {
            assert!(r.compose(&r.inverse()).unwrap().is_identity());
        }
    }

    #[test]
    fn conjugating_by_identity_is_identity_action() {
        let l = Arc::new(chain(3).unwrap());
        let meet = BinaryOp::meet_table(&l);
        let id = Automorphism::identity(&l);
        let conj = conjugate_op(&meet, &id).unwrap();
        assert_eq!(conj.cells(), meet.cells());
        let imp = induced_implication(&meet).unwrap();
        assert_eq!(conjugate_implication(&imp, &id).unwrap().cells(), imp.cells());
    }

    #[test]
    fn swap_action_on_b2_tables() {
        let l = b2();
        let autos = enumerate_automorphisms(&l).unwrap();
        let swap = &autos[1];
        let ops: Vec<_> = enumerate_quasi_overlaps(&l).unwrap().collect();
        // The two B2 quasi-overlaps have constant interiors a and b, so the
        // swap exchanges them with each other.
        let c0 = conjugate_op(&ops[0], swap).unwrap();
        assert_eq!(c0.cells(), ops[1].cells());
        let c1 = conjugate_op(&ops[1], swap).unwrap();
        assert_eq!(c1.cells(), ops[0].cells());
        // The meet table is swap-invariant under cellwise conjugation. It is
        // not a quasi-overlap on B2, so conjugate it by hand.
        let meet = BinaryOp::meet_table(&l);
        let conj = BinaryOp::from_fn(l.clone(), "meet_conj", |x, y| {
            swap.apply_inverse(meet.at(swap.apply(x), swap.apply(y)))
        });
        assert_eq!(conj.cells(), meet.cells());
    }

    #[test]
    fn double_conjugation_restores() {
        let l = b2();
        let autos = enumerate_automorphisms(&l).unwrap();
        let swap = &autos[1];
        let op = enumerate_quasi_overlaps(&l).unwrap().next().unwrap();
        let imp = residuum_table(&op);
        let twice =
            conjugate_implication(&conjugate_implication(&imp, swap).unwrap(), &swap.inverse())
                .unwrap();
        assert_eq!(twice.cells(), imp.cells());
    }

    #[test]
    fn coincide_on_small_instances() {
        let l = Arc::new(chain(4).unwrap());
        let id = Automorphism::identity(&l);
        for op in enumerate_quasi_overlaps(&l).unwrap() {
            assert!(check_coincide(&op, &id).unwrap().holds);
        }
        let b2 = b2();
        for rho in enumerate_automorphisms(&b2).unwrap() {
            for op in enumerate_quasi_overlaps(&b2).unwrap() {
                assert!(check_coincide(&op, &rho).unwrap().holds);
            }
        }
    }

    #[test]
    fn phi_on_c3_meet() {
        let l = Arc::new(chain(3).unwrap());
        let meet = BinaryOp::meet_table(&l);
        let id = Automorphism::identity(&l);
        let m = l.elem("c1").unwrap();
        let phi = closure_phi(&meet, &id, m).unwrap();
        let toks: Vec<&str> = phi.values().iter().map(|&v| l.token(v)).collect();
        assert_eq!(toks, ["c2", "c2", "c1"]);
        let psi = closure_psi(&meet, &id, m).unwrap();
        assert_eq!(psi.values(), phi.values());
        // phi_m is not monotone: the literal closure claim fails here.
        let report = check_closed_operator(&phi);
        assert!(!report.monotone);
    }

    #[test]
    fn phi_at_top_is_constant_top() {
        let l = Arc::new(chain(3).unwrap());
        let meet = BinaryOp::meet_table(&l);
        let id = Automorphism::identity(&l);
        let phi = closure_phi(&meet, &id, l.top()).unwrap();
        assert!(phi.values().iter().all(|&v| v == l.top()));
        let report = check_psi_phi_adjunction(&meet, &id, l.top()).unwrap();
        assert!(report.galois.holds);
        assert!(report.psi_after_phi.is_closed());
        assert!(report.phi_after_psi.is_closed());
        assert!(report.psi_closed.is_closed());
        assert!(report.phi_closed.is_closed());
    }

    #[test]
    fn psi_phi_adjunction_on_chains() {
        for k in 2..=4 {
            let l = Arc::new(chain(k).unwrap());
            let id = Automorphism::identity(&l);
            for op in enumerate_quasi_overlaps(&l).unwrap() {
                for z in l.elems() {
                    let report = check_psi_phi_adjunction(&op, &id, z).unwrap();
                    assert!(report.galois.holds);
                    assert!(report.psi_after_phi.is_closed());
                    assert!(report.phi_after_psi.is_closed());
                }
            }
        }
    }

    #[test]
    fn closure_requires_residuated_conjugate() {
        let l = b2();
        let id = Automorphism::identity(&l);
        let op = enumerate_quasi_overlaps(&l).unwrap().next().unwrap();
        assert_eq!(
            closure_phi(&op, &id, l.bottom()).unwrap_err(),
            Error::NotResiduated
        );
        assert_eq!(
            check_psi_phi_adjunction(&op, &id, l.bottom()).unwrap_err(),
            Error::NotResiduated
        );
    }

    #[test]
    fn closed_operator_examples() {
        let l = b2();
        assert!(check_closed_operator(&MonotoneMap::identity(&l)).is_closed());
        assert!(check_closed_operator(&MonotoneMap::constant(&l, l.top())).is_closed());
    }
}
