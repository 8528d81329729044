//! Residuated maps and monotone Galois connections between finite lattices.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{Elem, Lattice};
use crate::ops::Verdict;

/// A total unary map between lattices. Monotonicity is a property to check,
/// not an invariant of the type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneMap {
    domain: Arc<Lattice>,
    codomain: Arc<Lattice>,
    name: String,
    values: Vec<Elem>,
}

impl MonotoneMap {
    pub fn new(
        domain: Arc<Lattice>,
        codomain: Arc<Lattice>,
        name: impl Into<String>,
        values: Vec<Elem>,
    ) -> Result<Self> {
        if values.len() != domain.len() {
            return Err(Error::NotTotal { want: domain.len(), got: values.len() });
        }
        if let Some(bad) = values.iter().find(|e| e.index() >= codomain.len()) {
            return Err(Error::UnknownElement(format!("#{}", bad.index())));
        }
        Ok(MonotoneMap { domain, codomain, name: name.into(), values })
    }

    pub fn from_fn(
        domain: Arc<Lattice>,
        codomain: Arc<Lattice>,
        name: impl Into<String>,
        f: impl Fn(Elem) -> Elem,
    ) -> Self {
        let values = domain.elems().map(f).collect();
        MonotoneMap { domain, codomain, name: name.into(), values }
    }

    pub fn identity(lat: &Arc<Lattice>) -> Self {
        MonotoneMap::from_fn(lat.clone(), lat.clone(), "id", |x| x)
    }

    pub fn constant(lat: &Arc<Lattice>, c: Elem) -> Self {
        MonotoneMap::from_fn(lat.clone(), lat.clone(), "const", |_| c)
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.values[x.index()]
    }

    pub fn domain(&self) -> &Arc<Lattice> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Lattice> {
        &self.codomain
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn is_self_map(&self) -> bool {
        self.domain.as_ref() == self.codomain.as_ref()
    }

    /// First pair witnessing non-monotonicity, scanning row-major.
    pub fn monotone_witness(&self) -> Option<(Elem, Elem)> {
        for x in self.domain.elems() {
            for y in self.domain.elems() {
                if self.domain.leq(x, y) && !self.codomain.leq(self.apply(x), self.apply(y)) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_monotone(&self) -> bool {
        self.monotone_witness().is_none()
    }
}

/// Apply `first`, then `second`.
pub fn compose(first: &MonotoneMap, second: &MonotoneMap) -> Result<MonotoneMap> {
    if first.codomain.as_ref() != second.domain.as_ref() {
        return Err(Error::LatticeMismatch(
            first.codomain.name().to_string(),
            second.domain.name().to_string(),
        ));
    }
    Ok(MonotoneMap::from_fn(
        first.domain.clone(),
        second.codomain.clone(),
        format!("{}.{}", second.name, first.name),
        |x| second.apply(first.apply(x)),
    ))
}

/// A map together with its residual: `residual . forward >= id` on the
/// domain and `forward . residual <= id` on the codomain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResiduatedPair {
    pub forward: MonotoneMap,
    pub residual: MonotoneMap,
}

/// Why a map failed to be residuated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotResiduatedWitness {
    /// The map itself is not monotone on this pair.
    NotMonotone { lower: Elem, upper: Elem },
    /// The preimage down-set of this codomain element has no maximum.
    NoGreatest { at: Elem },
}

/// Result of attempting to compute a residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResidualOutcome {
    Residuated(ResiduatedPair),
    NotResiduated(NotResiduatedWitness),
}

impl ResidualOutcome {
    pub fn pair(self) -> Option<ResiduatedPair> {
        match self {
            ResidualOutcome::Residuated(p) => Some(p),
            ResidualOutcome::NotResiduated(_) => None,
        }
    }
}

/// Compute the residual `g(y) = max { x | f(x) <= y }` if it exists for
/// every `y`; a non-monotone `f` is reported as not residuated rather than
/// as an error.
pub fn residual_of(f: &MonotoneMap) -> ResidualOutcome {
    if let Some((lower, upper)) = f.monotone_witness() {
        return ResidualOutcome::NotResiduated(NotResiduatedWitness::NotMonotone { lower, upper });
    }
    let dom = f.domain();
    let cod = f.codomain();
    let mut values = Vec::with_capacity(cod.len());
    for y in cod.elems() {
        let set: Vec<Elem> = dom.elems().filter(|&x| cod.leq(f.apply(x), y)).collect();
        match greatest(dom, &set) {
            Some(m) => values.push(m),
            None => {
                return ResidualOutcome::NotResiduated(NotResiduatedWitness::NoGreatest { at: y })
            }
        }
    }
    let residual = MonotoneMap {
        domain: cod.clone(),
        codomain: dom.clone(),
        name: format!("{}^R", f.name()),
        values,
    };
    ResidualOutcome::Residuated(ResiduatedPair { forward: f.clone(), residual })
}

/// Greatest element of a set, if any.
fn greatest(lat: &Lattice, set: &[Elem]) -> Option<Elem> {
    set.iter().copied().find(|&m| set.iter().all(|&x| lat.leq(x, m)))
}

/// Least element of a set, if any.
fn least(lat: &Lattice, set: &[Elem]) -> Option<Elem> {
    set.iter().copied().find(|&m| set.iter().all(|&x| lat.leq(m, x)))
}

/// Is `f^-1(down w)` a principal ideal of the domain for every `w`?
/// Checks nonemptiness, down-closure, and an explicit maximum; the witness
/// is the first `w` whose preimage fails.
pub fn is_residuated_via_ideals(f: &MonotoneMap) -> Verdict {
    let dom = f.domain();
    let cod = f.codomain();
    for w in cod.elems() {
        let pre: Vec<Elem> = dom.elems().filter(|&x| cod.leq(f.apply(x), w)).collect();
        let principal = match greatest(dom, &pre) {
            None => false,
            Some(m) => dom.principal_ideal(m) == pre,
        };
        if !principal {
            return Verdict::fail(vec![w]);
        }
    }
    Verdict::pass()
}

/// Exhaustive Galois-connection test: `f(x) <= y  iff  x <= g(y)`.
/// Requires both maps monotone and the lattices to pair up.
pub fn is_galois_connection(f: &MonotoneMap, g: &MonotoneMap) -> Result<Verdict> {
    if f.domain().as_ref() != g.codomain().as_ref() || f.codomain().as_ref() != g.domain().as_ref()
    {
        return Err(Error::LatticeMismatch(
            f.domain().name().to_string(),
            g.codomain().name().to_string(),
        ));
    }
    if !f.is_monotone() || !g.is_monotone() {
        return Err(Error::NotMonotone);
    }
    Ok(galois_biconditional(f, g))
}

fn galois_biconditional(f: &MonotoneMap, g: &MonotoneMap) -> Verdict {
    let x_lat = f.domain();
    let y_lat = f.codomain();
    for x in x_lat.elems() {
        for y in y_lat.elems() {
            if y_lat.leq(f.apply(x), y) != x_lat.leq(x, g.apply(y)) {
                return Verdict::fail(vec![x, y]);
            }
        }
    }
    Verdict::pass()
}

/// The four equivalent ways of saying "f is residuated with residual g",
/// each evaluated independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterizationReport {
    /// Both monotone, `g.f >= id` and `f.g <= id`.
    pub residuated_pair: bool,
    /// `x <= g(y)  iff  f(x) <= y` for all pairs.
    pub adjunction: bool,
    /// `f` monotone and `g(y) = max { x | f(x) <= y }`.
    pub residual_formula: bool,
    /// `g` monotone and `f(x) = min { y | x <= g(y) }`.
    pub dual_formula: bool,
}

impl CharacterizationReport {
    pub fn all_agree(&self) -> bool {
        let v = self.residuated_pair;
        self.adjunction == v && self.residual_formula == v && self.dual_formula == v
    }

    pub fn all_hold(&self) -> bool {
        self.residuated_pair && self.adjunction && self.residual_formula && self.dual_formula
    }
}

/// Evaluate all four characterization conditions for an arbitrary pair of
/// total maps `f: X -> Y`, `g: Y -> X`.
pub fn characterization_agrees(f: &MonotoneMap, g: &MonotoneMap) -> Result<CharacterizationReport> {
    if f.domain().as_ref() != g.codomain().as_ref() || f.codomain().as_ref() != g.domain().as_ref()
    {
        return Err(Error::LatticeMismatch(
            f.domain().name().to_string(),
            g.codomain().name().to_string(),
        ));
    }
    let x_lat = f.domain();
    let y_lat = f.codomain();

    let residuated_pair = f.is_monotone()
        && g.is_monotone()
        && x_lat.elems().all(|x| x_lat.leq(x, g.apply(f.apply(x))))
        && y_lat.elems().all(|y| y_lat.leq(f.apply(g.apply(y)), y));

    let adjunction = galois_biconditional(f, g).holds;

    let residual_formula = f.is_monotone()
        && y_lat.elems().all(|y| {
            let set: Vec<Elem> = x_lat.elems().filter(|&x| y_lat.leq(f.apply(x), y)).collect();
            greatest(x_lat, &set) == Some(g.apply(y))
        });

    let dual_formula = g.is_monotone()
        && x_lat.elems().all(|x| {
            let set: Vec<Elem> = y_lat.elems().filter(|&y| x_lat.leq(x, g.apply(y))).collect();
            least(y_lat, &set) == Some(f.apply(x))
        });

    Ok(CharacterizationReport {
        residuated_pair,
        adjunction,
        residual_formula,
        dual_formula,
    })
}
