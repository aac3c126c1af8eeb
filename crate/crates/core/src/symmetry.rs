//! Topological symmetry groups `Aut(A, q)`: brute-force enumeration and the
//! closed-form orders of the prime families.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;

use crate::error::Result;
use crate::exact_linalg::IntegerMatrix;
use crate::metric_groups::{search_isometries, Family, MetricGroup, PrimeFamilySpec};

/// Element-order census: order -> number of elements of that order.
pub type Census = BTreeMap<u64, u64>;

#[derive(Clone, Debug)]
pub struct AutGroup {
    group: MetricGroup,
    /// Each automorphism as the list of generator images, sorted.
    elements: Vec<Vec<Vec<u64>>>,
    structure_name: Option<String>,
}

impl AutGroup {
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn structure_name(&self) -> Option<&str> {
        self.structure_name.as_deref()
    }

    pub fn elements(&self) -> &[Vec<Vec<u64>>] {
        &self.elements
    }

    /// Matrix of the `idx`-th automorphism: column `i` holds the image of `e_i`.
    pub fn matrix(&self, idx: usize) -> IntegerMatrix {
        let imgs = &self.elements[idx];
        let k = imgs.len();
        IntegerMatrix::from_fn(k, k, |r, c| BigInt::from(imgs[c][r]))
    }

    pub fn apply(&self, idx: usize, x: &[u64]) -> Vec<u64> {
        apply(&self.group, &self.elements[idx], x)
    }

    /// Index of `a o b`.
    pub fn compose(&self, a: usize, b: usize) -> usize {
        let imgs: Vec<Vec<u64>> = self.elements[b].iter().map(|y| self.apply(a, y)).collect();
        self.index_of(&imgs).expect("automorphisms closed under composition")
    }

    pub fn index_of(&self, imgs: &[Vec<u64>]) -> Option<usize> {
        self.elements.binary_search_by(|e| e.as_slice().cmp(imgs)).ok()
    }

    pub fn identity(&self) -> usize {
        let k = self.group.rank();
        let id: Vec<Vec<u64>> = (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect();
        self.index_of(&id).expect("identity present")
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.elements.len();
        (0..n).all(|a| (a + 1..n).all(|b| self.compose(a, b) == self.compose(b, a)))
    }

    pub fn census(&self) -> Census {
        let id = self.identity();
        let mut census = Census::new();
        for a in 0..self.elements.len() {
            let (mut x, mut ord) = (a, 1);
            while x != id {
                x = self.compose(a, x);
                ord += 1;
            }
            *census.entry(ord).or_insert(0) += 1;
        }
        census
    }
}

fn apply(g: &MetricGroup, imgs: &[Vec<u64>], x: &[u64]) -> Vec<u64> {
    let mut out = vec![0; g.rank()];
    for (xi, img) in x.iter().zip(imgs) {
        out = g.add(&out, &g.scale(*xi, img));
    }
    out
}

/// All q-preserving automorphisms of `g`.
pub fn aut_bruteforce(g: &MetricGroup, budget: u64) -> Result<AutGroup> {
    let mut elements: Vec<Vec<Vec<u64>>> =
        search_isometries(g, g, budget, true)?.into_iter().map(|iso| iso.images).collect();
    elements.sort();
    let mut aut = AutGroup { group: g.clone(), elements, structure_name: None };
    let (order, abelian, census) = (aut.order(), aut.is_abelian(), aut.census());
    aut.structure_name = catalog()
        .into_iter()
        .find(|entry| entry.order == order && entry.abelian == abelian && entry.census == census)
        .map(|entry| entry.name);
    Ok(aut)
}

/// Order and (when known) structure of `Aut` for a prime family.
pub fn aut_order_closed(spec: &PrimeFamilySpec) -> Result<(u64, Option<String>)> {
    spec.validate()?;
    let r = spec.r;
    let named = |n: u64, s: &str| (n, Some(s.to_string()));
    Ok(match spec.family {
        Family::A | Family::B if spec.p == 2 && r == 1 => named(1, "1"),
        Family::A | Family::B | Family::C | Family::D => named(2, "Z2"),
        Family::E => match r {
            1 => named(2, "Z2"),
            2 => named(4, "Z2×Z2"),
            _ => (1 << r, Some(semidirect_name(r))),
        },
        Family::F => match r {
            1 => named(6, "D3"),
            2 => named(12, "D6"),
            3 => named(24, "D6⋊Z2"),
            _ => (3 << r, None),
        },
    })
}

fn semidirect_name(r: u32) -> String {
    format!("(Z2×Z{})⋊Z2", 1u64 << (r - 2))
}

struct CatalogEntry {
    name: String,
    order: u64,
    abelian: bool,
    census: Census,
}

/// A small abstract group given by its multiplication on `0..order`.
struct Table {
    order: usize,
    mul: Box<dyn Fn(usize, usize) -> usize>,
}

impl Table {
    fn entry(&self, name: String) -> CatalogEntry {
        let n = self.order;
        let id = (0..n).find(|&e| (0..n).all(|x| (self.mul)(e, x) == x)).expect("identity");
        let abelian = (0..n).all(|a| (0..n).all(|b| (self.mul)(a, b) == (self.mul)(b, a)));
        let mut census = Census::new();
        for a in 0..n {
            let (mut x, mut ord) = (a, 1);
            while x != id {
                x = (self.mul)(a, x);
                ord += 1;
            }
            *census.entry(ord).or_insert(0) += 1;
        }
        CatalogEntry { name, order: n as u64, abelian, census }
    }
}

/// Dihedral group of order `2n` as pairs `(k, s)`: rotation `k`, reflection bit `s`.
fn dihedral(n: usize) -> Table {
    Table {
        order: 2 * n,
        mul: Box::new(move |a, b| {
            let (k1, s1) = (a % n, a / n);
            let (k2, s2) = (b % n, b / n);
            let k = if s1 == 0 { (k1 + k2) % n } else { (k1 + n - k2) % n };
            k + n * ((s1 + s2) % 2)
        }),
    }
}

fn cyclic(n: usize) -> Table {
    Table { order: n, mul: Box::new(move |a, b| (a + b) % n) }
}

fn product(a: Table, b: Table) -> Table {
    let nb = b.order;
    Table {
        order: a.order * nb,
        mul: Box::new(move |x, y| (a.mul)(x / nb, y / nb) * nb + (b.mul)(x % nb, y % nb)),
    }
}

/// Generalized dihedral group of the unit group `Z_{2^r}^*`:
/// `(a1, s1)(a2, s2) = (a1 a2^{(-1)^{s1}}, s1 + s2)`.
fn unit_dihedral(r: u32) -> Table {
    let m = 1usize << r;
    let units: Vec<usize> = (1..m).step_by(2).collect();
    let pos: HashMap<usize, usize> = units.iter().enumerate().map(|(i, &u)| (u, i)).collect();
    let h = units.len();
    let inv: Vec<usize> = units.iter().map(|&u| units.iter().position(|&v| u * v % m == 1).unwrap()).collect();
    Table {
        order: 2 * h,
        mul: Box::new(move |x, y| {
            let (a1, s1) = (x % h, x / h);
            let (a2, s2) = (y % h, y / h);
            let a2 = if s1 == 1 { inv[a2] } else { a2 };
            pos[&(units[a1] * units[a2] % m)] + h * ((s1 + s2) % 2)
        }),
    }
}

fn catalog() -> Vec<CatalogEntry> {
    let mut out = vec![
        cyclic(1).entry("1".into()),
        cyclic(2).entry("Z2".into()),
        product(cyclic(2), cyclic(2)).entry("Z2×Z2".into()),
        dihedral(3).entry("D3".into()),
        dihedral(6).entry("D6".into()),
        product(dihedral(6), cyclic(2)).entry("D6⋊Z2".into()),
    ];
    out.extend((3..=12).map(|r| unit_dihedral(r).entry(semidirect_name(r))));
    out
}
