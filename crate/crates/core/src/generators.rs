//! Constructors for the standard test lattices: chains, boolean lattices,
//! diamonds, products, and grid discretizations of the interval lattice.
//!
//! Every generator goes through [`Lattice::build`], so its output carries the
//! same validation guarantees as a hand-written lattice.

use crate::error::{Error, Result};
use crate::lattice::Lattice;

/// Result sizes are capped so exhaustive table checks stay at desk scale.
pub const MAX_ELEMENTS: usize = 4096;

/// Spreadsheet-style atom label: a, b, ..., z, aa, ab, ...
fn atom_label(mut i: usize) -> String {
    let mut s = Vec::new();
    loop {
        s.push(b'a' + (i % 26) as u8);
        i /= 26;
        if i == 0 {
            break;
        }
        i -= 1;
    }
    s.reverse();
    String::from_utf8(s).unwrap()
}

/// Totally ordered lattice `c0 < c1 < ... < c(k-1)`.
pub fn chain(k: usize) -> Result<Lattice> {
    if k == 0 {
        return Err(Error::BadParameter("chain needs at least one element".into()));
    }
    if k > MAX_ELEMENTS {
        return Err(Error::TooLarge { size: k, limit: MAX_ELEMENTS });
    }
    let elements: Vec<String> = (0..k).map(|i| format!("c{i}")).collect();
    let covers = (0..k - 1)
        .map(|i| (format!("c{i}"), format!("c{}", i + 1)))
        .collect();
    Lattice::build(format!("C{k}"), elements, covers)
}

/// Subsets of a k-element set ordered by inclusion. The empty set is "0",
/// the full set is "1", and proper nonempty subsets concatenate their atom
/// labels; e.g. `boolean(2)` has elements 0, a, b, 1.
pub fn boolean(k: usize) -> Result<Lattice> {
    if !(1..=12).contains(&k) {
        return Err(Error::BadParameter(format!("boolean size {k} outside 1..=12")));
    }
    let n = 1usize << k;
    let label = |mask: usize| -> String {
        if mask == 0 {
            "0".to_string()
        } else if mask == n - 1 {
            "1".to_string()
        } else {
            (0..k).filter(|b| mask >> b & 1 == 1).map(atom_label).collect()
        }
    };
    // Level order: by popcount, then by mask value.
    let mut masks: Vec<usize> = (0..n).collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    let elements: Vec<String> = masks.iter().map(|&m| label(m)).collect();
    let mut covers = Vec::new();
    for &m in &masks {
        for b in 0..k {
            if m >> b & 1 == 0 {
                covers.push((label(m), label(m | 1 << b)));
            }
        }
    }
    Lattice::build(format!("B{k}"), elements, covers)
}

/// Bottom, `k` pairwise-incomparable atoms, top: the lattice M_k.
pub fn diamond(k: usize) -> Result<Lattice> {
    if k == 0 {
        return Err(Error::BadParameter("diamond needs at least one atom".into()));
    }
    if k + 2 > MAX_ELEMENTS {
        return Err(Error::TooLarge { size: k + 2, limit: MAX_ELEMENTS });
    }
    let mut elements = vec!["0".to_string()];
    elements.extend((0..k).map(atom_label));
    elements.push("1".to_string());
    let mut covers = Vec::new();
    for i in 0..k {
        covers.push(("0".to_string(), atom_label(i)));
        covers.push((atom_label(i), "1".to_string()));
    }
    Lattice::build(format!("M{k}"), elements, covers)
}

/// Componentwise-ordered product. Elements are tokens `(x,y)`.
pub fn product(a: &Lattice, b: &Lattice) -> Result<Lattice> {
    let size = a.len() * b.len();
    if size > MAX_ELEMENTS {
        return Err(Error::TooLarge { size, limit: MAX_ELEMENTS });
    }
    let toks: Vec<(String, usize, usize)> = a
        .elems()
        .flat_map(|x| {
            b.elems()
                .map(move |y| (format!("({},{})", a.token(x), b.token(y)), x.index(), y.index()))
        })
        .collect();
    let elements: Vec<String> = toks.iter().map(|(t, _, _)| t.clone()).collect();
    let leq = |i: usize, j: usize| -> bool {
        let (_, x1, y1) = toks[i];
        let (_, x2, y2) = toks[j];
        a.leq(a.get(x1).unwrap(), a.get(x2).unwrap()) && b.leq(b.get(y1).unwrap(), b.get(y2).unwrap())
    };
    let covers = covers_of(elements.len(), leq, &elements);
    Lattice::build(format!("{}x{}", a.name(), b.name()), elements, covers)
}

/// Closed subintervals `[a,b]` of the `k`-step grid `{0, 1/k, ..., 1}`,
/// ordered componentwise: `[u,v] <= [p,q]` iff `u <= p` and `v <= q`.
/// Endpoints are exact rationals rendered in lowest terms.
pub fn interval_grid(k: usize) -> Result<Lattice> {
    if k == 0 {
        return Err(Error::BadParameter("interval grid needs at least one step".into()));
    }
    let size = (k + 1) * (k + 2) / 2;
    if size > MAX_ELEMENTS {
        return Err(Error::TooLarge { size, limit: MAX_ELEMENTS });
    }
    let frac = |i: usize| -> String {
        if i == 0 {
            "0".to_string()
        } else if i == k {
            "1".to_string()
        } else {
            let g = gcd(i, k);
            format!("{}/{}", i / g, k / g)
        }
    };
    let mut ends = Vec::with_capacity(size);
    for a in 0..=k {
        for b in a..=k {
            ends.push((a, b));
        }
    }
    let elements: Vec<String> = ends
        .iter()
        .map(|&(a, b)| format!("[{},{}]", frac(a), frac(b)))
        .collect();
    let leq = |i: usize, j: usize| ends[i].0 <= ends[j].0 && ends[i].1 <= ends[j].1;
    let covers = covers_of(elements.len(), leq, &elements);
    Lattice::build(format!("G{k}"), elements, covers)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Transitive reduction of an order relation given as a predicate.
fn covers_of(
    n: usize,
    leq: impl Fn(usize, usize) -> bool,
    elements: &[String],
) -> Vec<(String, String)> {
    let mut covers = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j
                && leq(i, j)
                && !(0..n).any(|z| z != i && z != j && leq(i, z) && leq(z, j))
            {
                covers.push((elements[i].clone(), elements[j].clone()));
            }
        }
    }
    covers
}

/// Recipe for a generated lattice, for provenance and file-driven sweeps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recipe {
    Chain(usize),
    Boolean(usize),
    Diamond(usize),
    Product(Box<Recipe>, Box<Recipe>),
    IntervalGrid(usize),
}

impl Recipe {
    pub fn build(&self) -> Result<Lattice> {
        match self {
            Recipe::Chain(k) => chain(*k),
            Recipe::Boolean(k) => boolean(*k),
            Recipe::Diamond(k) => diamond(*k),
            Recipe::Product(a, b) => product(&a.build()?, &b.build()?),
            Recipe::IntervalGrid(k) => interval_grid(*k),
        }
    }
}

/// The lattices the residuation search sweeps: all chains, diamonds, and
/// interval grids with at most `max_size` elements, in that kind order.
pub fn search_catalog(max_size: usize) -> Result<Vec<Lattice>> {
    let mut out = Vec::new();
    for k in 2..=max_size {
        out.push(chain(k)?);
    }
    let mut k = 2;
    while k + 2 <= max_size {
        out.push(diamond(k)?);
        k += 1;
    }
    let mut g = 1;
    while (g + 1) * (g + 2) / 2 <= max_size {
        out.push(interval_grid(g)?);
        g += 1;
    }
    Ok(out)
}
