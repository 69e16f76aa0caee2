//! Sparse polynomials over a finite field and Buchberger completion.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::arith::{Scalar, ScalarField};

/// Exponent vector of a monomial.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponents(pub Vec<u32>);

impl Exponents {
    pub fn zero(n: usize) -> Self {
        Exponents(vec![0; n])
    }

    pub fn unit(n: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; n];
        v[i] = e;
        Exponents(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Exponents) -> Exponents {
        Exponents(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Exponents {
        Exponents(
            self.0
                .iter()
                .map(|a| a.checked_mul(k).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn divides(&self, other: &Exponents) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// other / self, assuming divisibility.
    pub fn quotient_of(&self, other: &Exponents) -> Exponents {
        Exponents(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Exponents) -> Exponents {
        Exponents(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Exponents) -> Exponents {
        Exponents(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Exponents) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Product of graded-reverse-lexicographic orders on consecutive variable
/// blocks, compared lexicographically block by block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    blocks: Vec<usize>,
}

impl MonomialOrder {
    pub fn grevlex(n: usize) -> Self {
        MonomialOrder { blocks: vec![n] }
    }

    pub fn lex(n: usize) -> Self {
        MonomialOrder { blocks: vec![1; n] }
    }

    pub fn blocks(sizes: Vec<usize>) -> Self {
        MonomialOrder {
            blocks: sizes.into_iter().filter(|&s| s > 0).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.blocks.iter().sum()
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.blocks
    }

    pub fn cmp(&self, a: &Exponents, b: &Exponents) -> Ordering {
        let mut start = 0;
        for &size in &self.blocks {
            let end = start + size;
            let (sa, sb) = (&a.0[start..end], &b.0[start..end]);
            let da: u64 = sa.iter().map(|&e| e as u64).sum();
            let db: u64 = sb.iter().map(|&e| e as u64).sum();
            match da.cmp(&db) {
                Ordering::Equal => {}
                o => return o,
            }
            for i in (0..size).rev() {
                match sa[i].cmp(&sb[i]) {
                    Ordering::Equal => {}
                    o => return o.reverse(),
                }
            }
            start = end;
        }
        Ordering::Equal
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Scalar,
    pub exps: Exponents,
}

/// Polynomial with terms sorted strictly decreasing in the ring's order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: Vec<Term>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }
}

/// Polynomial ring κ[x_1..x_n] with a fixed monomial order.
#[derive(Clone, Debug)]
pub struct PolyRing {
    field: Arc<ScalarField>,
    names: Vec<String>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(field: Arc<ScalarField>, names: Vec<String>, order: MonomialOrder) -> Self {
        assert_eq!(
            names.len(),
            order.nvars(),
            "order must cover every variable"
        );
        PolyRing {
            field,
            names,
            order,
        }
    }

    pub fn field(&self) -> &Arc<ScalarField> {
        &self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn with_order(&self, order: MonomialOrder) -> PolyRing {
        PolyRing::new(self.field.clone(), self.names.clone(), order)
    }

    pub fn cmp(&self, a: &Exponents, b: &Exponents) -> Ordering {
        self.order.cmp(a, b)
    }

    pub fn constant(&self, c: Scalar) -> Poly {
        self.term(c, Exponents::zero(self.nvars()))
    }

    pub fn one(&self) -> Poly {
        self.constant(self.field.one())
    }

    pub fn term(&self, coeff: Scalar, exps: Exponents) -> Poly {
        if coeff.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![Term { coeff, exps }],
            }
        }
    }

    pub fn monomial(&self, exps: Exponents) -> Poly {
        self.term(self.field.one(), exps)
    }

    pub fn variable(&self, i: usize) -> Poly {
        self.monomial(Exponents::unit(self.nvars(), i, 1))
    }

    /// Collects terms, combining equal monomials and dropping zeros.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = Term>) -> Poly {
        let mut acc: HashMap<Exponents, Scalar> = HashMap::new();
        for t in terms {
            let e = acc.entry(t.exps).or_default();
            *e = self.field.add(*e, t.coeff);
        }
        let mut terms: Vec<Term> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exps, coeff)| Term { coeff, exps })
            .collect();
        terms.sort_by(|a, b| self.cmp(&b.exps, &a.exps));
        Poly { terms }
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        self.merge(&a.terms, &b.terms, self.field.one())
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        self.merge(&a.terms, &b.terms, self.field.from_int(-1))
    }

    /// a + c·b.
    fn merge(&self, a: &[Term], b: &[Term], c: Scalar) -> Poly {
        let f = &self.field;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                self.cmp(&a[i].exps, &b[j].exps)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let coeff = f.mul(c, b[j].coeff);
                    if !coeff.is_zero() {
                        out.push(Term {
                            coeff,
                            exps: b[j].exps.clone(),
                        });
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let coeff = f.add(a[i].coeff, f.mul(c, b[j].coeff));
                    if !coeff.is_zero() {
                        out.push(Term {
                            coeff,
                            exps: a[i].exps.clone(),
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { terms: out }
    }

    pub fn scale(&self, a: &Poly, c: Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: a
                .terms
                .iter()
                .map(|t| Term {
                    coeff: self.field.mul(c, t.coeff),
                    exps: t.exps.clone(),
                })
                .collect(),
        }
    }

    pub fn mul_term(&self, a: &Poly, c: Scalar, m: &Exponents) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: a
                .terms
                .iter()
                .map(|t| Term {
                    coeff: self.field.mul(c, t.coeff),
                    exps: t.exps.mul(m),
                })
                .collect(),
        }
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let mut terms = Vec::with_capacity(a.len() * b.len());
        for s in &a.terms {
            for t in &b.terms {
                terms.push(Term {
                    coeff: self.field.mul(s.coeff, t.coeff),
                    exps: s.exps.mul(&t.exps),
                });
            }
        }
        self.from_terms(terms)
    }

    pub fn pow(&self, a: &Poly, mut e: u64) -> Poly {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// a^(p^e) computed through the Frobenius: coefficients and exponents are raised termwise.
    pub fn frobenius_power(&self, a: &Poly, q: u64) -> Poly {
        let f = &self.field;
        self.from_terms(a.terms.iter().map(|t| Term {
            coeff: f.pow(t.coeff, q as u128),
            exps: t.exps.pow(u32::try_from(q).expect("exponent overflow")),
        }))
    }

    pub fn monic(&self, a: &Poly) -> Poly {
        match a.leading() {
            None => Poly::zero(),
            Some(t) => self.scale(a, self.field.inv(t.coeff)),
        }
    }

    pub fn format_exps(&self, e: &Exponents) -> String {
        let mut parts = Vec::new();
        for (name, &k) in self.names.iter().zip(&e.0) {
            match k {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{name}^{k}")),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }

    pub fn format(&self, a: &Poly) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let f = &self.field;
        let mut s = String::new();
        for (i, t) in a.terms.iter().enumerate() {
            let neg = f.k() == 1 && t.coeff.raw() > f.p() / 2 && f.p() > 2;
            let c = if neg { f.neg(t.coeff) } else { t.coeff };
            if i > 0 {
                s.push_str(if neg { " - " } else { " + " });
            } else if neg {
                s.push('-');
            }
            let m = self.format_exps(&t.exps);
            if c == f.one() {
                s.push_str(&m);
            } else if m == "1" {
                s.push_str(&f.format(c));
            } else {
                s.push_str(&format!("{} {}", f.format(c), m));
            }
        }
        s
    }
}

/// Reduced Gröbner basis with respect to the ring's order.
#[derive(Clone)]
pub struct GroebnerBasis {
    ring: PolyRing,
    polys: Vec<Poly>,
}

impl fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.polys.iter().map(|p| self.ring.format(p)))
            .finish()
    }
}

impl GroebnerBasis {
    pub fn compute(ring: &PolyRing, gens: &[Poly]) -> GroebnerBasis {
        let mut basis: Vec<Poly> = Vec::new();
        for g in gens {
            let h = reduce_by(ring, &basis, g);
            if !h.is_zero() {
                basis.push(ring.monic(&h));
            }
        }
        let mut pairs: HashSet<(usize, usize)> = HashSet::new();
        for j in 0..basis.len() {
            for i in 0..j {
                pairs.insert((i, j));
            }
        }
        while let Some(&(i, j)) = pairs.iter().min_by(|a, b| {
            let la = lcm_of(&basis, a.0, a.1);
            let lb = lcm_of(&basis, b.0, b.1);
            la.degree()
                .cmp(&lb.degree())
                .then_with(|| ring.cmp(&la, &lb))
                .then_with(|| a.cmp(b))
        }) {
            pairs.remove(&(i, j));
            let lti = &basis[i].terms[0].exps;
            let ltj = &basis[j].terms[0].exps;
            if lti.coprime(ltj) {
                continue;
            }
            let l = lti.lcm(ltj);
            let chain = (0..basis.len()).any(|k| {
                k != i
                    && k != j
                    && basis[k].terms[0].exps.divides(&l)
                    && !pairs.contains(&ordered(i, k))
                    && !pairs.contains(&ordered(j, k))
            });
            if chain {
                continue;
            }
            let s = s_polynomial(ring, &basis[i], &basis[j]);
            let h = reduce_by(ring, &basis, &s);
            if !h.is_zero() {
                let n = basis.len();
                basis.push(ring.monic(&h));
                for k in 0..n {
                    pairs.insert((k, n));
                }
            }
        }
        GroebnerBasis {
            ring: ring.clone(),
            polys: interreduce(ring, basis),
        }
    }

    /// Gröbner basis of (gens) : m^∞, by elimination of an auxiliary variable t
    /// against t·m − 1.
    pub fn saturation(ring: &PolyRing, gens: &[Poly], m: &Exponents) -> GroebnerBasis {
        let mut names = vec!["_t".to_string()];
        names.extend(ring.names().iter().cloned());
        let mut blocks = vec![1];
        blocks.extend(ring.order().block_sizes().iter().copied());
        let big = PolyRing::new(ring.field().clone(), names, MonomialOrder::blocks(blocks));
        let lift = |p: &Poly| {
            big.from_terms(p.terms().iter().map(|t| {
                let mut e = vec![0];
                e.extend(&t.exps.0);
                Term {
                    coeff: t.coeff,
                    exps: Exponents(e),
                }
            }))
        };
        let mut big_gens: Vec<Poly> = gens.iter().map(lift).collect();
        let mut e = vec![1u32];
        e.extend(&m.0);
        big_gens.push(big.sub(&big.monomial(Exponents(e)), &big.one()));
        let gb = GroebnerBasis::compute(&big, &big_gens);
        let kept: Vec<Poly> = gb
            .polys()
            .iter()
            .filter(|p| p.terms().iter().all(|t| t.exps.0[0] == 0))
            .map(|p| {
                ring.from_terms(p.terms().iter().map(|t| Term {
                    coeff: t.coeff,
                    exps: Exponents(t.exps.0[1..].to_vec()),
                }))
            })
            .collect();
        GroebnerBasis::compute(ring, &kept)
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn leading_monomials(&self) -> Vec<&Exponents> {
        self.polys.iter().map(|p| &p.terms[0].exps).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.polys.iter().any(|p| p.terms[0].exps.is_one())
    }

    pub fn reduce(&self, f: &Poly) -> Poly {
        reduce_by(&self.ring, &self.polys, f)
    }

    pub fn reduce_monomial(&self, c: Scalar, e: &Exponents) -> Poly {
        self.reduce(&self.ring.term(c, e.clone()))
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.reduce(f).is_zero()
    }

    pub fn is_standard(&self, e: &Exponents) -> bool {
        !self.polys.iter().any(|p| p.terms[0].exps.divides(e))
    }

    /// Monomials outside the leading-term ideal, or None when infinitely many.
    pub fn standard_monomials(&self) -> Option<Vec<Exponents>> {
        let n = self.ring.nvars();
        let mut bounds = vec![u32::MAX; n];
        for p in &self.polys {
            let e = &p.terms[0].exps;
            let support: Vec<usize> = (0..n).filter(|&i| e.0[i] > 0).collect();
            if support.len() == 1 {
                let i = support[0];
                bounds[i] = bounds[i].min(e.0[i]);
            } else if support.is_empty() {
                return Some(Vec::new());
            }
        }
        if bounds.contains(&u32::MAX) {
            return None;
        }
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        self.enumerate_standard(0, &bounds, &mut cur, &mut out);
        Some(out)
    }

    fn enumerate_standard(
        &self,
        i: usize,
        bounds: &[u32],
        cur: &mut Vec<u32>,
        out: &mut Vec<Exponents>,
    ) {
        if i == cur.len() {
            let e = Exponents(cur.clone());
            if self.is_standard(&e) {
                out.push(e);
            }
            return;
        }
        for k in 0..bounds[i] {
            cur[i] = k;
            if !self.is_standard(&Exponents(cur.clone())) {
                break;
            }
            self.enumerate_standard(i + 1, bounds, cur, out);
        }
        cur[i] = 0;
    }
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn lcm_of(basis: &[Poly], i: usize, j: usize) -> Exponents {
    basis[i].terms[0].exps.lcm(&basis[j].terms[0].exps)
}

fn s_polynomial(ring: &PolyRing, f: &Poly, g: &Poly) -> Poly {
    let (tf, tg) = (&f.terms[0], &g.terms[0]);
    let l = tf.exps.lcm(&tg.exps);
    let field = ring.field();
    let a = ring.mul_term(f, field.inv(tf.coeff), &tf.exps.quotient_of(&l));
    let b = ring.mul_term(g, field.inv(tg.coeff), &tg.exps.quotient_of(&l));
    ring.sub(&a, &b)
}

/// Full reduction of f modulo the given polynomials.
pub(crate) fn reduce_by(ring: &PolyRing, basis: &[Poly], f: &Poly) -> Poly {
    let field = ring.field();
    // Work list kept in increasing order so the largest term is popped from the end.
    let mut work: Vec<Term> = f.terms.iter().rev().cloned().collect();
    let mut out: Vec<Term> = Vec::new();
    while let Some(t) = work.pop() {
        let reducer = basis.iter().find(|g| g.terms[0].exps.divides(&t.exps));
        match reducer {
            None => out.push(t),
            Some(g) => {
                let lead = &g.terms[0];
                let c = field.neg(field.div(t.coeff, lead.coeff));
                let m = lead.exps.quotient_of(&t.exps);
                let tail: Vec<Term> = g.terms[1..]
                    .iter()
                    .rev()
                    .map(|s| Term {
                        coeff: field.mul(c, s.coeff),
                        exps: s.exps.mul(&m),
                    })
                    .collect();
                work = merge_ascending(ring, &work, &tail);
            }
        }
    }
    Poly { terms: out }
}

fn merge_ascending(ring: &PolyRing, a: &[Term], b: &[Term]) -> Vec<Term> {
    if a.is_empty() {
        return b.to_vec();
    }
    let field = ring.field();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = if i == a.len() {
            Ordering::Greater
        } else if j == b.len() {
            Ordering::Less
        } else {
            ring.cmp(&a[i].exps, &b[j].exps)
        };
        match ord {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                let c = field.add(a[i].coeff, b[j].coeff);
                if !c.is_zero() {
                    out.push(Term {
                        coeff: c,
                        exps: a[i].exps.clone(),
                    });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn interreduce(ring: &PolyRing, basis: Vec<Poly>) -> Vec<Poly> {
    let mut minimal: Vec<Poly> = Vec::new();
    for (i, p) in basis.iter().enumerate() {
        let lt = &p.terms[0].exps;
        let redundant = basis.iter().enumerate().any(|(j, q)| {
            let lq = &q.terms[0].exps;
            j != i && lq.divides(lt) && (lq != lt || j < i)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Poly> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, q)| q.clone())
            .collect();
        let head = Poly {
            terms: vec![minimal[i].terms[0].clone()],
        };
        let tail = Poly {
            terms: minimal[i].terms[1..].to_vec(),
        };
        let r = ring.add(&head, &reduce_by(ring, &others, &tail));
        reduced.push(ring.monic(&r));
    }
    reduced.sort_by(|a, b| ring.cmp(&a.terms[0].exps, &b.terms[0].exps));
    reduced
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64, names: &[&str], order: MonomialOrder) -> PolyRing {
        PolyRing::new(
            Arc::new(ScalarField::prime(p).unwrap()),
            names.iter().map(|s| s.to_string()).collect(),
            order,
        )
    }

    fn mono(r: &PolyRing, e: &[u32]) -> Poly {
        r.monomial(Exponents(e.to_vec()))
    }

    #[test]
    fn grevlex_order() {
        let o = MonomialOrder::grevlex(3);
        let cmp = |a: &[u32], b: &[u32]| o.cmp(&Exponents(a.to_vec()), &Exponents(b.to_vec()));
        assert_eq!(cmp(&[2, 0, 0], &[0, 0, 1]), Ordering::Greater);
        assert_eq!(cmp(&[1, 1, 0], &[2, 0, 0]), Ordering::Less);
        assert_eq!(cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        let blocks = MonomialOrder::blocks(vec![1, 2]);
        assert_eq!(
            blocks.cmp(&Exponents(vec![1, 0, 0]), &Exponents(vec![0, 5, 5])),
            Ordering::Greater
        );
    }

    #[test]
    fn cyclic_three_variable_basis() {
        let r = ring(7, &["x", "y", "z"], MonomialOrder::grevlex(3));
        let x = r.variable(0);
        let y = r.variable(1);
        let z = r.variable(2);
        let f1 = r.sub(&r.mul(&x, &x), &y);
        let f2 = r.sub(&r.mul(&y, &y), &z);
        let gb = GroebnerBasis::compute(&r, &[f1.clone(), f2.clone()]);
        assert!(gb.contains(&f1) && gb.contains(&f2));
        let consequence = r.sub(&r.pow(&x, 4), &z);
        assert!(gb.contains(&consequence));
        assert!(!gb.contains(&x));
    }

    #[test]
    fn basis_independent_of_input_order() {
        let r = ring(5, &["u", "v", "x", "y"], MonomialOrder::blocks(vec![2, 2]));
        let g1 = r.sub(&mono(&r, &[2, 0, 0, 0]), &mono(&r, &[0, 0, 1, 1]));
        let g2 = r.sub(&mono(&r, &[1, 1, 0, 0]), &mono(&r, &[0, 0, 0, 2]));
        let g3 = r.sub(&mono(&r, &[0, 2, 0, 0]), &mono(&r, &[0, 0, 2, 1]));
        let a = GroebnerBasis::compute(&r, &[g1.clone(), g2.clone(), g3.clone()]);
        let b = GroebnerBasis::compute(&r, &[g3, g1, g2]);
        assert_eq!(a.polys(), b.polys());
    }

    #[test]
    fn standard_monomials_of_artinian_quotient() {
        let r = ring(3, &["x", "y"], MonomialOrder::grevlex(2));
        let gb = GroebnerBasis::compute(
            &r,
            &[
                r.sub(&r.variable(1), &r.pow(&r.variable(0), 2)),
                r.variable(1),
            ],
        );
        let std = gb.standard_monomials().unwrap();
        assert_eq!(std, vec![Exponents(vec![0, 0]), Exponents(vec![1, 0])]);
        let gb = GroebnerBasis::compute(&r, &[r.variable(0)]);
        assert!(gb.standard_monomials().is_none());
    }
}
