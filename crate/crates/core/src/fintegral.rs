//! Affine semigroups in ℕ^e: group hull, membership, normalization,
//! q-integral and F-integral closures, power-integral elements and
//! fraction-field degrees.
//!
//! Semigroups containing a multiple a_i·ε_i of every axis are handled
//! exactly: every residue class modulo (a_1, …, a_e) meets the semigroup in
//! an upward-closed set with finitely many minimal elements, and each closure
//! is computed class by class.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{hnf_basis, index_in_full, to_big, IntMatrix};
use crate::toric::BipartiteData;

/// Finitely generated subsemigroup of ℕ^e.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSemigroup {
    pub rank: usize,
    pub generators: Vec<Vec<u32>>,
}

impl AffineSemigroup {
    pub fn new(rank: usize, generators: Vec<Vec<u32>>) -> Result<Self> {
        if generators.iter().any(|g| g.len() != rank) {
            return Err(Error::InvalidInput("generator has the wrong length".into()));
        }
        if generators.iter().any(|g| g.iter().all(|&x| x == 0)) {
            return Err(Error::InvalidInput("generators must be nonzero".into()));
        }
        Ok(AffineSemigroup { rank, generators })
    }

    /// Same generators as a set, sorted.
    pub fn canonical(&self) -> AffineSemigroup {
        let set: BTreeSet<Vec<u32>> = self.generators.iter().cloned().collect();
        AffineSemigroup {
            rank: self.rank,
            generators: set.into_iter().collect(),
        }
    }
}

/// A fraction monomial: an exponent vector in ℤ^e.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FractionMonomial(pub Vec<i64>);

/// Canonical (Hermite) basis of the subgroup of ℤ^e generated by Γ.
pub fn group_hull(g: &AffineSemigroup) -> IntMatrix {
    hnf_basis(&big_rows(&g.generators), g.rank)
}

fn big_rows(rows: &[Vec<u32>]) -> IntMatrix {
    to_big(
        &rows
            .iter()
            .map(|r| r.iter().map(|&x| x as i64).collect())
            .collect::<Vec<_>>(),
    )
}

/// Default size limit for class enumeration.
pub const DEFAULT_LIMIT: usize = 1_000_000;

/// Γ described by an axis base and the minimal elements of every residue
/// class modulo the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassStructure {
    pub base: Vec<u32>,
    pub classes: BTreeMap<Vec<u32>, Vec<Vec<u32>>>,
}

impl ClassStructure {
    pub fn build(g: &AffineSemigroup, limit: usize) -> Result<ClassStructure> {
        let e = g.rank;
        let mut base = vec![0u32; e];
        for gen in &g.generators {
            let support: Vec<usize> = (0..e).filter(|&i| gen[i] > 0).collect();
            if let [i] = support[..] {
                if base[i] == 0 || gen[i] < base[i] {
                    base[i] = gen[i];
                }
            }
        }
        if let Some(i) = base.iter().position(|&a| a == 0) {
            return Err(Error::InvalidInput(format!(
                "no generator is a multiple of axis {i}"
            )));
        }
        let steps: Vec<&Vec<u32>> = g
            .generators
            .iter()
            .filter(|gen| {
                !(0..e).any(|i| {
                    gen[i] == base[i] && gen.iter().enumerate().all(|(j, &x)| j == i || x == 0)
                })
            })
            .collect();
        let mut s = ClassStructure {
            base,
            classes: BTreeMap::new(),
        };
        s.insert(vec![0; e]);
        let mut queue = VecDeque::from([vec![0u32; e]]);
        let mut seen = 0usize;
        while let Some(x) = queue.pop_front() {
            seen += 1;
            if seen > limit {
                return Err(Error::BoundExceeded {
                    what: "semigroup classes".into(),
                    partial: s.all_minimal_i64(),
                });
            }
            if !s.is_minimal(&x) {
                continue;
            }
            for st in &steps {
                let y: Vec<u32> = x.iter().zip(st.iter()).map(|(a, b)| a + b).collect();
                if s.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        Ok(s)
    }

    fn residue(&self, x: &[u32]) -> Vec<u32> {
        x.iter().zip(&self.base).map(|(v, a)| v % a).collect()
    }

    fn residue_signed(&self, x: &[i64]) -> Vec<u32> {
        x.iter()
            .zip(&self.base)
            .map(|(v, &a)| v.rem_euclid(a as i64) as u32)
            .collect()
    }

    /// Adds x as a minimal element unless it is dominated; drops elements it dominates.
    fn insert(&mut self, x: Vec<u32>) -> bool {
        let r = self.residue(&x);
        let list = self.classes.entry(r).or_default();
        if list.iter().any(|m| dominates(&x, m)) {
            return false;
        }
        list.retain(|m| !dominates(m, &x));
        list.push(x);
        true
    }

    fn is_minimal(&self, x: &[u32]) -> bool {
        self.classes
            .get(&self.residue(x))
            .is_some_and(|l| l.iter().any(|m| m == x))
    }

    pub fn contains(&self, x: &[u32]) -> bool {
        self.classes
            .get(&self.residue(x))
            .is_some_and(|l| l.iter().any(|m| dominates(x, m)))
    }

    pub fn contains_signed(&self, x: &[i64]) -> bool {
        if x.iter().any(|&v| v < 0) {
            return false;
        }
        let x: Vec<u32> = x.iter().map(|&v| v as u32).collect();
        self.contains(&x)
    }

    /// Residues of the group hull modulo the base.
    pub fn residues(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.classes.keys()
    }

    pub fn in_group(&self, x: &[i64]) -> bool {
        self.classes.contains_key(&self.residue_signed(x))
    }

    fn all_minimal(&self) -> Vec<Vec<u32>> {
        let mut out: Vec<Vec<u32>> = self.classes.values().flatten().cloned().collect();
        for (i, &a) in self.base.iter().enumerate() {
            let mut v = vec![0; self.base.len()];
            v[i] = a;
            out.push(v);
        }
        out
    }

    fn all_minimal_i64(&self) -> Vec<Vec<i64>> {
        self.all_minimal()
            .into_iter()
            .map(|v| v.into_iter().map(i64::from).collect())
            .collect()
    }

    /// Minimal generating set of the semigroup described by the classes.
    pub fn generators(&self) -> AffineSemigroup {
        let cands: BTreeSet<Vec<u32>> = self
            .all_minimal()
            .into_iter()
            .filter(|v| v.iter().any(|&x| x > 0))
            .collect();
        let gens: Vec<Vec<u32>> = cands
            .iter()
            .filter(|g| {
                !cands.iter().any(|h| {
                    h != *g && dominates(g, h) && {
                        let rest: Vec<u32> = g.iter().zip(h).map(|(a, b)| a - b).collect();
                        self.contains(&rest)
                    }
                })
            })
            .cloned()
            .collect();
        AffineSemigroup {
            rank: self.base.len(),
            generators: gens,
        }
    }

    /// Same base, classes replaced.
    fn with_classes(&self, classes: BTreeMap<Vec<u32>, Vec<Vec<u32>>>) -> ClassStructure {
        ClassStructure {
            base: self.base.clone(),
            classes,
        }
    }
}

fn dominates(x: &[u32], m: &[u32]) -> bool {
    x.iter().zip(m).all(|(a, b)| a >= b)
}

fn antichain(mut v: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    v.sort();
    v.dedup();
    let keep: Vec<Vec<u32>> = v
        .iter()
        .filter(|x| !v.iter().any(|m| m != *x && dominates(x, m)))
        .cloned()
        .collect();
    keep
}

/// γ ∈ Γ, decided on the class structure.
pub fn semigroup_membership(point: &[i64], g: &AffineSemigroup) -> Result<bool> {
    Ok(ClassStructure::build(g, DEFAULT_LIMIT)?.contains_signed(point))
}

/// grp(Γ) ∩ ℕ^e. With every axis in Γ the cone of Γ is the whole orthant,
/// so each residue class of the group contributes its box point.
pub fn normalization(g: &AffineSemigroup) -> Result<AffineSemigroup> {
    Ok(normalization_classes(&ClassStructure::build(g, DEFAULT_LIMIT)?).generators())
}

fn normalization_classes(s: &ClassStructure) -> ClassStructure {
    s.with_classes(s.residues().map(|r| (r.clone(), vec![r.clone()])).collect())
}

/// {γ ∈ grp(Γ) : q·γ ∈ Γ}.
pub fn q_integral_closure(g: &AffineSemigroup, q: u64) -> Result<AffineSemigroup> {
    if q < 2 {
        return Err(Error::InvalidInput("q must be at least 2".into()));
    }
    let s = ClassStructure::build(g, DEFAULT_LIMIT)?;
    Ok(q_closure_classes(&s, q)?.generators())
}

/// Smallest γ ≡ ρ (mod a) with q·γ ≥ w, for each minimal w of the class of q·ρ.
fn q_closure_classes(s: &ClassStructure, q: u64) -> Result<ClassStructure> {
    let mut classes = BTreeMap::new();
    for rho in s.residues() {
        let target: Vec<u32> = rho
            .iter()
            .zip(&s.base)
            .map(|(&r, &a)| ((r as u64 * q) % a as u64) as u32)
            .collect();
        let Some(ws) = s.classes.get(&target) else {
            continue;
        };
        let mut mins = Vec::new();
        for w in ws {
            let mut gamma = Vec::with_capacity(rho.len());
            for ((&wi, &r), &a) in w.iter().zip(rho).zip(&s.base) {
                let lower = (wi as u64).div_ceil(q);
                let (r, a) = (r as u64, a as u64);
                let v = if lower <= r {
                    r
                } else {
                    r + (lower - r).div_ceil(a) * a
                };
                gamma.push(u32::try_from(v).map_err(|_| Error::Overflow("closure element"))?);
            }
            mins.push(gamma);
        }
        classes.insert(rho.clone(), antichain(mins));
    }
    Ok(s.with_classes(classes))
}

/// F-normalization: the union of the q-integral closures for q = p, p², …,
/// with the first q at which the chain is stable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FNormalization {
    pub semigroup: AffineSemigroup,
    pub stable_q: u64,
}

pub fn f_normalization(g: &AffineSemigroup, p: u64) -> Result<FNormalization> {
    if !crate::arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let s = ClassStructure::build(g, DEFAULT_LIMIT)?;
    let mut q = p;
    let mut cur = q_closure_classes(&s, q)?;
    loop {
        let nq = q
            .checked_mul(p)
            .ok_or(Error::Overflow("F-normalization exponent"))?;
        let next = q_closure_classes(&s, nq)?;
        if next == cur {
            return Ok(FNormalization {
                semigroup: cur.generators(),
                stable_q: q,
            });
        }
        q = nq;
        cur = next;
    }
}

/// Monoid of γ ∈ grp(Γ) ∩ ℕ^e with m·γ ∈ Γ for all m ≫ 0.
///
/// For large m, m·γ ∈ Γ depends only on the class of m·γ and on which
/// coordinates of γ vanish: it holds iff that class has a minimal element
/// supported inside supp(γ). So γ is power-integral iff this holds for every
/// class in the cyclic group generated by the class of γ.
pub fn power_integral(g: &AffineSemigroup) -> Result<AffineSemigroup> {
    let s = ClassStructure::build(g, DEFAULT_LIMIT)?;
    Ok(power_integral_classes(&s).generators())
}

fn power_integral_classes(s: &ClassStructure) -> ClassStructure {
    let e = s.base.len();
    let mut classes = BTreeMap::new();
    for rho in s.residues() {
        let forced: Vec<usize> = (0..e).filter(|&i| rho[i] > 0).collect();
        let mut mins = Vec::new();
        for mask in 0u32..(1 << e) {
            if forced.iter().any(|&i| mask & (1 << i) == 0) {
                continue;
            }
            let support: Vec<bool> = (0..e).map(|i| mask & (1 << i) != 0).collect();
            if orbit_supported(s, rho, &support) {
                let gamma: Vec<u32> = (0..e)
                    .map(|i| {
                        if !support[i] {
                            0
                        } else if rho[i] > 0 {
                            rho[i]
                        } else {
                            s.base[i]
                        }
                    })
                    .collect();
                mins.push(gamma);
            }
        }
        classes.insert(rho.clone(), antichain(mins));
    }
    s.with_classes(classes)
}

fn orbit_supported(s: &ClassStructure, rho: &[u32], support: &[bool]) -> bool {
    let mut cur = rho.to_vec();
    loop {
        let ok = s.classes.get(&cur).is_some_and(|l| {
            l.iter()
                .any(|w| w.iter().zip(support).all(|(&x, &sup)| sup || x == 0))
        });
        if !ok {
            return false;
        }
        if cur.iter().all(|&x| x == 0) {
            return true;
        }
        cur = cur
            .iter()
            .zip(rho)
            .zip(&s.base)
            .map(|((&c, &r), &a)| (c + r) % a)
            .collect();
    }
}

/// True when γ is power-integral over Γ.
pub fn is_power_integral(point: &[i64], g: &AffineSemigroup) -> Result<bool> {
    let s = ClassStructure::build(g, DEFAULT_LIMIT)?;
    if point.iter().any(|&x| x < 0) || !s.in_group(point) {
        return Ok(false);
    }
    let x: Vec<u32> = point.iter().map(|&v| v as u32).collect();
    let support: Vec<bool> = x.iter().map(|&v| v > 0).collect();
    Ok(orbit_supported(&s, &s.residue(&x), &support))
}

/// The multipliers m ≤ bound with m·γ ∈ Γ.
pub fn membership_multiples(point: &[i64], g: &AffineSemigroup, bound: u32) -> Result<Vec<u32>> {
    let s = ClassStructure::build(g, DEFAULT_LIMIT)?;
    Ok((1..=bound)
        .filter(|&m| s.contains_signed(&point.iter().map(|&x| x * m as i64).collect::<Vec<_>>()))
        .collect())
}

/// True when every generator of `inner` lies in `outer`.
pub fn contained_in(inner: &AffineSemigroup, outer: &AffineSemigroup) -> Result<bool> {
    let s = ClassStructure::build(outer, DEFAULT_LIMIT)?;
    Ok(inner.generators.iter().all(|g| s.contains(g)))
}

/// [grp(Γ) : grp(base)].
pub fn frac_degree(g: &AffineSemigroup, base: &AffineSemigroup) -> Result<BigInt> {
    if g.rank != base.rank {
        return Err(Error::InvalidInput(
            "semigroups live in different ranks".into(),
        ));
    }
    let ib = index_in_full(&big_rows(&base.generators), base.rank).ok_or(Error::InfiniteIndex)?;
    let ig = index_in_full(&big_rows(&g.generators), g.rank).ok_or(Error::InfiniteIndex)?;
    let (quot, rem) = ib.div_rem(&ig);
    if !rem.is_zero() {
        return Err(Error::InvalidInput(
            "base does not generate a subgroup of the hull".into(),
        ));
    }
    Ok(quot)
}

/// Semigroup of the monomial parametrization y_i ↦ t^{a·e_i}, u_j ↦ t^{a·A_j},
/// with each coordinate divided by its gcd over all images.
pub fn image_semigroup(data: &BipartiteData) -> Result<AffineSemigroup> {
    let scale = data.phi.common_denominator();
    let d = data.d();
    let mut images: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..d {
        let mut e = vec![BigInt::zero(); d];
        e[i] = scale.clone();
        images.push(e);
    }
    for row in &data.phi.rows {
        images.push(
            row.iter()
                .map(|x| (x * num_rational::BigRational::from_integer(scale.clone())).to_integer())
                .collect(),
        );
    }
    let mut gens: Vec<Vec<u32>> = vec![Vec::new(); images.len()];
    for c in 0..d {
        let g = images.iter().fold(BigInt::zero(), |acc, v| acc.gcd(&v[c]));
        for (out, v) in gens.iter_mut().zip(&images) {
            out.push(
                (&v[c] / &g)
                    .to_u32()
                    .ok_or(Error::Overflow("image exponent"))?,
            );
        }
    }
    AffineSemigroup::new(d, gens)
}
