//! Finite bounded lattices built from cover relations.
//!
//! A [`Lattice`] is constructed once from a list of element tokens and a
//! cover relation, validated eagerly (cycle-free covers, unique bottom and
//! top, existence of all meets and joins), and is immutable afterwards.
//! Every derived table is stored densely, so all queries are table lookups.

use std::fmt;

use crate::error::{Error, Result};

/// Handle to an element of a particular [`Lattice`].
///
/// An `Elem` is only meaningful together with the lattice that produced it;
/// using it against another lattice is a logic error (queries are
/// bounds-checked and will panic).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub(crate) usize);

impl Elem {
    /// Position of the element in the lattice's `elements` order.
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// Dense boolean matrix with u64-packed rows. Row `i` holds the set of
/// columns related to `i`.
#[derive(Clone, Debug)]
struct BitRows {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitRows {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitRows {
            n,
            words,
            data: vec![0; n * words],
        }
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.n && j < self.n);
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize) {
        self.data[i * self.words + j / 64] |= 1 << (j % 64);
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    /// Or row `src` into row `dst`.
    fn or_row(&mut self, dst: usize, src: usize) {
        let (d, s) = (dst * self.words, src * self.words);
        for w in 0..self.words {
            self.data[d + w] |= self.data[s + w];
        }
    }
}

/// Does every set bit of `a` also appear in `b`?
fn subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// A finite bounded lattice: elements, the reflexive-transitive closure of
/// the cover relation, and dense meet/join tables.
#[derive(Clone, Debug)]
pub struct Lattice {
    name: String,
    elements: Vec<String>,
    /// Cover pairs (lower, upper), sorted by index pair.
    covers: Vec<(usize, usize)>,
    /// leq.get(i, j) == true iff element i <= element j.
    leq: BitRows,
    meet: Vec<u32>,
    join: Vec<u32>,
    bottom: usize,
    top: usize,
}

impl PartialEq for Lattice {
    /// Two lattices are equal iff they have the same token list in the same
    /// order and the same cover set. No isomorphism quotient.
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && self.covers == other.covers
    }
}

impl Eq for Lattice {}

impl Lattice {
    /// Build and validate a lattice from element tokens and cover pairs
    /// `(x, y)` meaning "x is covered by y".
    pub fn build(
        name: impl Into<String>,
        elements: Vec<String>,
        covers: Vec<(String, String)>,
    ) -> Result<Lattice> {
        let name = name.into();
        let n = elements.len();
        if n == 0 {
            return Err(Error::BadParameter("a lattice needs at least one element".into()));
        }
        let mut index = std::collections::HashMap::with_capacity(n);
        for (i, tok) in elements.iter().enumerate() {
            if index.insert(tok.clone(), i).is_some() {
                return Err(Error::DuplicateElement(tok.clone()));
            }
        }
        let mut cover_idx = Vec::with_capacity(covers.len());
        for (a, b) in &covers {
            let ia = *index.get(a).ok_or_else(|| Error::UnknownElement(a.clone()))?;
            let ib = *index.get(b).ok_or_else(|| Error::UnknownElement(b.clone()))?;
            if ia == ib {
                return Err(Error::Cycle(a.clone()));
            }
            cover_idx.push((ia, ib));
        }
        cover_idx.sort_unstable();
        if let Some(w) = cover_idx.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateCover(
                elements[w[0].0].clone(),
                elements[w[0].1].clone(),
            ));
        }

        // Topological sort of the cover digraph; a leftover node means a cycle.
        let mut indeg = vec![0usize; n];
        let mut out = vec![Vec::new(); n];
        for &(a, b) in &cover_idx {
            indeg[b] += 1;
            out[a].push(b);
        }
        let mut queue: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            topo.push(v);
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push(w);
                }
            }
        }
        if topo.len() != n {
            let stuck = (0..n).find(|&i| indeg[i] > 0).unwrap();
            return Err(Error::Cycle(elements[stuck].clone()));
        }

        // Reflexive-transitive closure, accumulating along reverse topo order.
        let mut leq = BitRows::new(n);
        for i in 0..n {
            leq.set(i, i);
        }
        for &v in topo.iter().rev() {
            for w in out[v].clone() {
                leq.or_row(v, w);
            }
        }
        let mut geq = BitRows::new(n);
        for i in 0..n {
            for j in 0..n {
                if leq.get(i, j) {
                    geq.set(j, i);
                }
            }
        }

        // Reject transitively redundant covers.
        for &(a, b) in &cover_idx {
            for z in 0..n {
                if z != a && z != b && leq.get(a, z) && leq.get(z, b) {
                    return Err(Error::RedundantCover {
                        lower: elements[a].clone(),
                        upper: elements[b].clone(),
                        via: elements[z].clone(),
                    });
                }
            }
        }

        // Unique bottom and top.
        let minimals: Vec<usize> = (0..n)
            .filter(|&i| (0..n).all(|j| !leq.get(j, i) || j == i))
            .collect();
        let maximals: Vec<usize> = (0..n)
            .filter(|&i| (0..n).all(|j| !leq.get(i, j) || j == i))
            .collect();
        if maximals.len() != 1 {
            return Err(Error::NoBound("top"));
        }
        if minimals.len() != 1 {
            return Err(Error::NoBound("bottom"));
        }
        let (bottom, top) = (minimals[0], maximals[0]);

        // Meet and join tables. The first element of the bound set along the
        // appropriate topological direction is a maximal (minimal) bound; it
        // is the meet (join) iff it dominates the whole bound set.
        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        let words = leq.words;
        let mut lb = vec![0u64; words];
        for x in 0..n {
            for y in x..n {
                // meet: greatest lower bound.
                for w in 0..words {
                    lb[w] = geq.row(x)[w] & geq.row(y)[w];
                }
                let cand = topo
                    .iter()
                    .rev()
                    .copied()
                    .find(|&z| lb[z / 64] >> (z % 64) & 1 == 1)
                    .expect("bottom is always a lower bound");
                if !subset(&lb, geq.row(cand)) {
                    return Err(Error::NotALattice {
                        x: elements[x].clone(),
                        y: elements[y].clone(),
                        kind: "meet",
                    });
                }
                meet[x * n + y] = cand as u32;
                meet[y * n + x] = cand as u32;
                // join: least upper bound.
                for w in 0..words {
                    lb[w] = leq.row(x)[w] & leq.row(y)[w];
                }
                let cand = topo
                    .iter()
                    .copied()
                    .find(|&z| lb[z / 64] >> (z % 64) & 1 == 1)
                    .expect("top is always an upper bound");
                if !subset(&lb, leq.row(cand)) {
                    return Err(Error::NotALattice {
                        x: elements[x].clone(),
                        y: elements[y].clone(),
                        kind: "join",
                    });
                }
                join[x * n + y] = cand as u32;
                join[y * n + x] = cand as u32;
            }
        }

        Ok(Lattice {
            name,
            elements,
            covers: cover_idx,
            leq,
            meet,
            join,
            bottom,
            top,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// All elements in token-list order.
    pub fn elems(&self) -> impl ExactSizeIterator<Item = Elem> + '_ {
        (0..self.elements.len()).map(Elem)
    }

    /// Look an element up by token.
    pub fn elem(&self, token: &str) -> Result<Elem> {
        self.elements
            .iter()
            .position(|t| t == token)
            .map(Elem)
            .ok_or_else(|| Error::UnknownElement(token.to_string()))
    }

    /// Element at a given index, if in range.
    pub fn get(&self, index: usize) -> Option<Elem> {
        (index < self.elements.len()).then_some(Elem(index))
    }

    pub fn token(&self, e: Elem) -> &str {
        &self.elements[e.0]
    }

    pub fn tokens(&self) -> &[String] {
        &self.elements
    }

    pub fn bottom(&self) -> Elem {
        Elem(self.bottom)
    }

    pub fn top(&self) -> Elem {
        Elem(self.top)
    }

    /// Cover pairs (lower, upper) in canonical order.
    pub fn covers(&self) -> impl ExactSizeIterator<Item = (Elem, Elem)> + '_ {
        self.covers.iter().map(|&(a, b)| (Elem(a), Elem(b)))
    }

    #[inline]
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.leq.get(x.0, y.0)
    }

    #[inline]
    pub fn lt(&self, x: Elem, y: Elem) -> bool {
        x != y && self.leq.get(x.0, y.0)
    }

    #[inline]
    pub fn meet(&self, x: Elem, y: Elem) -> Elem {
        Elem(self.meet[x.0 * self.len() + y.0] as usize)
    }

    #[inline]
    pub fn join(&self, x: Elem, y: Elem) -> Elem {
        Elem(self.join[x.0 * self.len() + y.0] as usize)
    }

    /// Supremum of a set of elements; the empty set yields bottom.
    pub fn sup<I: IntoIterator<Item = Elem>>(&self, set: I) -> Elem {
        set.into_iter().fold(self.bottom(), |a, b| self.join(a, b))
    }

    /// Infimum of a set of elements; the empty set yields top.
    pub fn inf<I: IntoIterator<Item = Elem>>(&self, set: I) -> Elem {
        set.into_iter().fold(self.top(), |a, b| self.meet(a, b))
    }

    /// Is `s` nonempty with an upper bound *inside `s`* for every pair?
    pub fn is_directed(&self, s: &[Elem]) -> bool {
        !s.is_empty()
            && s.iter().all(|&u| {
                s.iter()
                    .all(|&v| s.iter().any(|&w| self.leq(u, w) && self.leq(v, w)))
            })
    }

    /// Dual of [`Lattice::is_directed`].
    pub fn is_filtered(&self, s: &[Elem]) -> bool {
        !s.is_empty()
            && s.iter().all(|&u| {
                s.iter()
                    .all(|&v| s.iter().any(|&w| self.leq(w, u) && self.leq(w, v)))
            })
    }

    /// The principal ideal `{y | y <= x}`, ascending by index.
    pub fn principal_ideal(&self, x: Elem) -> Vec<Elem> {
        self.elems().filter(|&y| self.leq(y, x)).collect()
    }

    /// The principal filter `{y | x <= y}`, ascending by index.
    pub fn principal_filter(&self, x: Elem) -> Vec<Elem> {
        self.elems().filter(|&y| self.leq(x, y)).collect()
    }

    /// Is the subset `s` order dense in this lattice: does every strict pair
    /// `x < y` of the lattice admit `z` in `s` with `x < z < y`?
    pub fn is_order_dense_in(&self, s: &[Elem]) -> bool {
        self.elems().all(|x| {
            self.elems().all(|y| {
                !self.lt(x, y) || s.iter().any(|&z| self.lt(x, z) && self.lt(z, y))
            })
        })
    }

    /// Order density of the whole carrier. Vacuously true without strict pairs.
    pub fn is_order_dense(&self) -> bool {
        let all: Vec<Elem> = self.elems().collect();
        self.is_order_dense_in(&all)
    }

    /// Lower limit of a finite net: `sup_i inf_{j >= i} x_j`.
    pub fn liminf(&self, net: &FiniteNet) -> Result<Elem> {
        let tails = self.tail_folds(net, |a, b| self.meet(a, b))?;
        Ok(self.sup(tails))
    }

    /// Upper limit of a finite net: `inf_i sup_{j >= i} x_j`.
    pub fn limsup(&self, net: &FiniteNet) -> Result<Elem> {
        let tails = self.tail_folds(net, |a, b| self.join(a, b))?;
        Ok(self.inf(tails))
    }

    /// Fold each tail `{x_j | j >= i}` with `f`, right to left.
    fn tail_folds(&self, net: &FiniteNet, f: impl Fn(Elem, Elem) -> Elem) -> Result<Vec<Elem>> {
        let vs = net.values();
        if vs.is_empty() {
            return Err(Error::EmptyNet);
        }
        let mut acc = *vs.last().unwrap();
        let mut tails = vec![acc];
        for &v in vs.iter().rev().skip(1) {
            acc = f(v, acc);
            tails.push(acc);
        }
        Ok(tails)
    }
}

/// A finite net: a sequence of lattice elements indexed by `{1..k}` with the
/// usual linear order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteNet {
    values: Vec<Elem>,
}

impl FiniteNet {
    pub fn new(values: Vec<Elem>) -> Self {
        FiniteNet { values }
    }

    pub fn from_tokens(lat: &Lattice, tokens: &[&str]) -> Result<Self> {
        Ok(FiniteNet {
            values: tokens.iter().map(|t| lat.elem(t)).collect::<Result<_>>()?,
        })
    }

    pub fn index_count(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{chain, diamond};

    fn b2() -> Lattice {
        diamond(2).unwrap()
    }

    fn toks(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn pairs(v: &[(&str, &str)]) -> Vec<(String, String)> {
        v.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    #[test]
    fn two_chain_builds() {
        let l = Lattice::build("L", toks(&["0", "1"]), pairs(&[("0", "1")])).unwrap();
        assert_eq!(l.token(l.bottom()), "0");
        assert_eq!(l.token(l.top()), "1");
        assert!(l.leq(l.bottom(), l.top()));
        assert!(!l.leq(l.top(), l.bottom()));
    }

    #[test]
    fn diamond_m3_accepted() {
        let l = Lattice::build(
            "M3",
            toks(&["0", "a", "b", "c", "1"]),
            pairs(&[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")]),
        )
        .unwrap();
        let a = l.elem("a").unwrap();
        let b = l.elem("b").unwrap();
        assert_eq!(l.token(l.meet(a, b)), "0");
        assert_eq!(l.token(l.join(a, b)), "1");
    }

    #[test]
    fn missing_top_is_rejected() {
        let err = Lattice::build(
            "L",
            toks(&["0", "a", "b", "1"]),
            pairs(&[("0", "a"), ("0", "b")]),
        )
        .unwrap_err();
        assert_eq!(err, Error::NoBound("top"));
    }

    #[test]
    fn cycle_is_rejected() {
        let err = Lattice::build(
            "L",
            toks(&["x", "y"]),
            pairs(&[("x", "y"), ("y", "x")]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Cycle(_)));
    }

    #[test]
    fn redundant_cover_is_rejected() {
        let err = Lattice::build(
            "L",
            toks(&["0", "m", "1"]),
            pairs(&[("0", "m"), ("m", "1"), ("0", "1")]),
        )
        .unwrap_err();
        assert_eq!(
            err,
            Error::RedundantCover {
                lower: "0".into(),
                upper: "1".into(),
                via: "m".into()
            }
        );
    }

    #[test]
    fn poset_without_unique_bounds_for_pairs_is_rejected() {
        // a and b have two minimal upper bounds c, d (and c, d two maximal
        // lower bounds); the first failing pair in scan order is the join.
        let err = Lattice::build(
            "H",
            toks(&["0", "a", "b", "c", "d", "1"]),
            pairs(&[
                ("0", "a"),
                ("0", "b"),
                ("a", "c"),
                ("a", "d"),
                ("b", "c"),
                ("b", "d"),
                ("c", "1"),
                ("d", "1"),
            ]),
        )
        .unwrap_err();
        assert_eq!(
            err,
            Error::NotALattice { x: "a".into(), y: "b".into(), kind: "join" }
        );
    }

    #[test]
    fn meet_join_examples() {
        let l = b2();
        let a = l.elem("a").unwrap();
        let b = l.elem("b").unwrap();
        assert_eq!(l.token(l.meet(a, b)), "0");
        assert_eq!(l.token(l.join(a, b)), "1");
        let c3 = chain(3).unwrap();
        let m = c3.elem("c1").unwrap();
        assert_eq!(c3.meet(m, c3.top()), m);
    }

    #[test]
    fn sup_inf_conventions() {
        let c3 = chain(3).unwrap();
        let m = c3.elem("c1").unwrap();
        assert_eq!(c3.sup([c3.bottom(), m]), m);
        assert_eq!(c3.sup([]), c3.bottom());
        assert_eq!(c3.inf([]), c3.top());
        let l = b2();
        let a = l.elem("a").unwrap();
        let b = l.elem("b").unwrap();
        assert_eq!(l.sup([a, b]), l.top());
    }

    #[test]
    fn directedness() {
        let l = b2();
        let a = l.elem("a").unwrap();
        let b = l.elem("b").unwrap();
        assert!(!l.is_directed(&[a, b]));
        assert!(l.is_directed(&[a, b, l.top()]));
        assert!(!l.is_directed(&[]));
        assert!(l.is_filtered(&[a, b, l.bottom()]));
        assert!(!l.is_filtered(&[a, b]));
    }

    #[test]
    fn ideals_and_filters() {
        let l = b2();
        let a = l.elem("a").unwrap();
        assert_eq!(l.principal_ideal(a), vec![l.bottom(), a]);
        let c3 = chain(3).unwrap();
        let m = c3.elem("c1").unwrap();
        assert_eq!(c3.principal_filter(m), vec![m, c3.top()]);
        assert_eq!(l.principal_ideal(l.top()).len(), l.len());
    }

    #[test]
    fn order_density() {
        assert!(!chain(3).unwrap().is_order_dense());
        assert!(chain(1).unwrap().is_order_dense());
        assert!(!b2().is_order_dense());
    }

    #[test]
    fn net_limits() {
        let c3 = chain(3).unwrap();
        let z = c3.bottom();
        let m = c3.elem("c1").unwrap();
        let net = FiniteNet::new(vec![z, m, z, m]);
        assert_eq!(c3.liminf(&net).unwrap(), m);

        let l = b2();
        let a = l.elem("a").unwrap();
        let b = l.elem("b").unwrap();
        let net = FiniteNet::new(vec![a, b]);
        assert_eq!(l.limsup(&net).unwrap(), b);

        let constant = FiniteNet::new(vec![m, m, m]);
        assert_eq!(c3.liminf(&constant).unwrap(), m);
        assert_eq!(c3.limsup(&constant).unwrap(), m);

        assert_eq!(c3.liminf(&FiniteNet::new(vec![])), Err(Error::EmptyNet));
    }

    #[test]
    fn equality_is_token_exact() {
        let l1 = chain(2).unwrap();
        let l2 = chain(2).unwrap();
        assert_eq!(l1, l2);
        let renamed = Lattice::build("X", toks(&["a", "b"]), pairs(&[("a", "b")])).unwrap();
        assert_ne!(l1, renamed);
    }
}
