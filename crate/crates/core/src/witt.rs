//! Length-2 p-typical Witt vectors over truncated quotients of a toric ring,
//! Teichmüller lifts, and the Witt-transform check on relations.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::binomial::{Monomial, ToricPresentation};
use crate::error::{Error, Result};
use crate::poly::{Exponents, GroebnerBasis, Poly, PolyRing};

/// Finite-dimensional quotient of a polynomial ring over a field of
/// characteristic p.
#[derive(Debug)]
pub struct ArtinianQuotient {
    ring: PolyRing,
    gb: GroebnerBasis,
    dim: usize,
    /// C(p, i)/p mod p for i = 0..=p.
    carries: Vec<u64>,
}

impl ArtinianQuotient {
    pub fn new(ring: PolyRing, gens: &[Poly]) -> Result<Arc<Self>> {
        let gb = GroebnerBasis::compute(&ring, gens);
        let dim = gb.standard_monomials().ok_or(Error::NotArtinian)?.len();
        let carries = carry_coefficients(ring.field().p());
        Ok(Arc::new(ArtinianQuotient {
            ring,
            gb,
            dim,
            carries,
        }))
    }

    /// R/(I + 𝔫^N) with 𝔫 the ideal of the y-variables.
    pub fn truncate(pres: &ToricPresentation, n: u32) -> Result<Arc<Self>> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "truncation order must be positive".into(),
            ));
        }
        let mut gens = pres.gb().polys().to_vec();
        for y in crate::binomial::monomials_up_to(pres.d(), n) {
            if y.iter().sum::<u32>() == n {
                gens.push(pres.ring().monomial(pres.join(&vec![0; pres.n()], &y)));
            }
        }
        Self::new(pres.ring().clone(), &gens)
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn p(&self) -> u64 {
        self.ring.field().p()
    }

    pub fn reduce(&self, f: &Poly) -> Poly {
        self.gb.reduce(f)
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&self.ring.mul(a, b))
    }

    fn pow(&self, a: &Poly, mut e: u64) -> Poly {
        let mut base = a.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        self.reduce(&acc)
    }

    /// Σ_{i=1}^{p−1} (C(p,i)/p)·a^i·b^{p−i}.
    fn carry(&self, a: &Poly, b: &Poly) -> Poly {
        let p = self.p() as usize;
        let field = self.ring.field();
        let mut apow = vec![self.ring.one()];
        let mut bpow = vec![self.ring.one()];
        for i in 1..p {
            apow.push(self.mul(&apow[i - 1], a));
            bpow.push(self.mul(&bpow[i - 1], b));
        }
        let mut acc = Poly::zero();
        for i in 1..p {
            let c = field.from_int(self.carries[i] as i64);
            if c.is_zero() {
                continue;
            }
            let t = self.mul(&apow[i], &bpow[p - i]);
            acc = self.ring.add(&acc, &self.ring.scale(&t, c));
        }
        acc
    }
}

/// C(p, i)/p reduced mod p, from exact binomial coefficients.
fn carry_coefficients(p: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(p as usize + 1);
    let mut c = BigUint::from(1u32);
    let pb = BigUint::from(p);
    for i in 0..=p {
        if i > 0 {
            c = c * BigUint::from(p - i + 1) / BigUint::from(i);
        }
        let v = if i == 0 || i == p {
            BigUint::zero()
        } else {
            (&c / &pb) % &pb
        };
        out.push(v.to_u64().unwrap_or(0));
    }
    out
}

/// (a0, a1) ∈ W₂(A).
#[derive(Clone, Debug)]
pub struct Witt2Element {
    pub base: Arc<ArtinianQuotient>,
    pub a0: Poly,
    pub a1: Poly,
}

impl PartialEq for Witt2Element {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.base, &other.base) && self.a0 == other.a0 && self.a1 == other.a1
    }
}

impl Witt2Element {
    pub fn new(base: &Arc<ArtinianQuotient>, a0: &Poly, a1: &Poly) -> Self {
        Witt2Element {
            base: base.clone(),
            a0: base.reduce(a0),
            a1: base.reduce(a1),
        }
    }

    pub fn zero(base: &Arc<ArtinianQuotient>) -> Self {
        Self::new(base, &Poly::zero(), &Poly::zero())
    }

    pub fn one(base: &Arc<ArtinianQuotient>) -> Self {
        teichmuller(base, &base.ring.one())
    }

    pub fn is_zero(&self) -> bool {
        self.a0.is_zero() && self.a1.is_zero()
    }

    /// Image of the integer n under ℤ → W₂(A).
    pub fn integer(base: &Arc<ArtinianQuotient>, n: i64) -> Self {
        let one = Self::one(base);
        let mut acc = Self::zero(base);
        for _ in 0..n.unsigned_abs() {
            acc = witt2_add(&acc, &one).expect("same base");
        }
        if n < 0 {
            witt2_neg(&acc)
        } else {
            acc
        }
    }

    pub fn format(&self) -> String {
        let r = &self.base.ring;
        format!("({}, {})", r.format(&self.a0), r.format(&self.a1))
    }
}

fn same_base(x: &Witt2Element, y: &Witt2Element) -> Result<()> {
    if Arc::ptr_eq(&x.base, &y.base) {
        Ok(())
    } else {
        Err(Error::BaseMismatch)
    }
}

pub fn witt2_add(x: &Witt2Element, y: &Witt2Element) -> Result<Witt2Element> {
    same_base(x, y)?;
    let a = &x.base;
    let r = &a.ring;
    let a0 = r.add(&x.a0, &y.a0);
    let a1 = r.sub(&r.add(&x.a1, &y.a1), &a.carry(&x.a0, &y.a0));
    Ok(Witt2Element::new(a, &a0, &a1))
}

/// (−a0, −a1 + Σ (C(p,i)/p)·a0^i·(−a0)^{p−i}), the unique y with x + y = 0.
pub fn witt2_neg(x: &Witt2Element) -> Witt2Element {
    let a = &x.base;
    let r = &a.ring;
    let b0 = r.scale(&x.a0, r.field().from_int(-1));
    let b1 = r.sub(&a.carry(&x.a0, &b0), &x.a1);
    Witt2Element::new(a, &b0, &b1)
}

pub fn witt2_sub(x: &Witt2Element, y: &Witt2Element) -> Result<Witt2Element> {
    witt2_add(x, &witt2_neg(y))
}

/// (a0·b0, a0^p·b1 + a1·b0^p); the p·a1·b1 term vanishes in characteristic p.
pub fn witt2_mul(x: &Witt2Element, y: &Witt2Element) -> Result<Witt2Element> {
    same_base(x, y)?;
    let a = &x.base;
    let p = a.p();
    let a0 = a.mul(&x.a0, &y.a0);
    let a1 = a.ring.add(
        &a.mul(&a.pow(&x.a0, p), &y.a1),
        &a.mul(&x.a1, &a.pow(&y.a0, p)),
    );
    Ok(Witt2Element::new(a, &a0, &a1))
}

pub fn witt2_pow(x: &Witt2Element, mut e: u64) -> Witt2Element {
    let mut base = x.clone();
    let mut acc = Witt2Element::one(&x.base);
    while e > 0 {
        if e & 1 == 1 {
            acc = witt2_mul(&acc, &base).expect("same base");
        }
        e >>= 1;
        if e > 0 {
            base = witt2_mul(&base, &base).expect("same base");
        }
    }
    acc
}

pub fn teichmuller(base: &Arc<ArtinianQuotient>, a: &Poly) -> Witt2Element {
    Witt2Element::new(base, a, &Poly::zero())
}

/// How a scalar coefficient c of a relation enters W₂.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarLift {
    /// The integer in (−p/2, p/2] reducing to c; −1 becomes Witt negation.
    Integer,
    /// τ(c).
    Teichmuller,
}

/// Per-relation outcome of the transform check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationWittCheck {
    pub index: usize,
    pub relation: String,
    pub passed: bool,
    pub difference: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittCheckReport {
    pub truncation: u32,
    pub dimension: usize,
    pub relations: Vec<RelationWittCheck>,
}

impl WittCheckReport {
    pub fn all_passed(&self) -> bool {
        self.relations.iter().all(|r| r.passed)
    }
}

/// Default truncation order: twice the largest relation degree.
pub fn default_truncation(pres: &ToricPresentation) -> u32 {
    (2 * pres.max_relation_degree()).max(1) as u32
}

/// Checks τ-images of both sides of every relation agree in W₂(R/𝔫^N).
/// Requires every relation to be purely toric.
pub fn witt_transform_check(pres: &ToricPresentation, truncation: u32) -> Result<WittCheckReport> {
    let minus_one = pres.field().from_int(-1);
    for (i, r) in pres.relations().iter().enumerate() {
        let ok = match &r.tail {
            Some(t) => {
                let c = pres.field().div(t.coeff, r.lead.coeff);
                c == pres.field().one() || c == minus_one
            }
            None => false,
        };
        if !ok {
            return Err(Error::NotPurelyToric { relation: i });
        }
    }
    witt_probe(pres, truncation, ScalarLift::Integer)
}

/// The same check without the purity precondition, with a choice of scalar lift.
pub fn witt_probe(
    pres: &ToricPresentation,
    truncation: u32,
    lift: ScalarLift,
) -> Result<WittCheckReport> {
    let base = ArtinianQuotient::truncate(pres, truncation)?;
    let mut relations = Vec::new();
    for (index, r) in pres.relations().iter().enumerate() {
        let lhs = lift_monomial(&base, pres, &r.lead, lift)?;
        let rhs = match &r.tail {
            Some(t) => lift_monomial(&base, pres, t, lift)?,
            None => Witt2Element::zero(&base),
        };
        let diff = witt2_sub(&lhs, &rhs)?;
        relations.push(RelationWittCheck {
            index,
            relation: pres.format_relation(r),
            passed: diff.is_zero(),
            difference: diff.format(),
        });
    }
    Ok(WittCheckReport {
        truncation,
        dimension: base.dim(),
        relations,
    })
}

fn lift_monomial(
    base: &Arc<ArtinianQuotient>,
    pres: &ToricPresentation,
    m: &Monomial,
    lift: ScalarLift,
) -> Result<Witt2Element> {
    let n = pres.n() + pres.d();
    let mut acc = Witt2Element::one(base);
    for (i, &e) in m.uexp.iter().chain(&m.yexp).enumerate() {
        if e > 0 {
            let var = teichmuller(base, &base.ring.monomial(Exponents::unit(n, i, 1)));
            acc = witt2_mul(&acc, &witt2_pow(&var, e as u64))?;
        }
    }
    let field = pres.field();
    let scalar = match lift {
        ScalarLift::Teichmuller => teichmuller(base, &base.ring.constant(m.coeff)),
        ScalarLift::Integer => {
            if !field.is_prime_field_element(m.coeff) {
                return Err(Error::InvalidInput(
                    "integer lift needs a prime-field coefficient".into(),
                ));
            }
            let p = field.p() as i64;
            let raw = field.digits(m.coeff)[0] as i64;
            let n = if raw > p / 2 { raw - p } else { raw };
            Witt2Element::integer(base, n)
        }
    };
    witt2_mul(&scalar, &acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ScalarField;
    use crate::binomial::BinomialElement;
    use crate::poly::MonomialOrder;
    use crate::toric::{build_bipartite, tests::e3_data};
    use proptest::prelude::*;

    fn prime_field_base(p: u64) -> Arc<ArtinianQuotient> {
        let ring = PolyRing::new(
            Arc::new(ScalarField::prime(p).unwrap()),
            vec![],
            MonomialOrder::grevlex(0),
        );
        ArtinianQuotient::new(ring, &[]).unwrap()
    }

    fn elt(base: &Arc<ArtinianQuotient>, a0: u64, a1: u64) -> Witt2Element {
        let f = base.ring.field().clone();
        Witt2Element::new(
            base,
            &base.ring.constant(f.from_int(a0 as i64)),
            &base.ring.constant(f.from_int(a1 as i64)),
        )
    }

    fn comps(x: &Witt2Element) -> (u64, u64) {
        let c = |p: &Poly| p.terms().first().map_or(0, |t| t.coeff.raw());
        (c(&x.a0), c(&x.a1))
    }

    /// (a0, a1) ↦ a0^p + p·a1 mod p², using integer lifts of the components.
    fn ghost(x: &Witt2Element, p: u64) -> u64 {
        let (a0, a1) = comps(x);
        let m = p * p;
        let mut w = 1u64;
        for _ in 0..p {
            w = w * a0 % m;
        }
        (w + p * a1) % m
    }

    #[test]
    fn carries_match_closed_form() {
        // C(p,i)/p ≡ (−1)^{i−1}/i mod p
        for p in [2u64, 3, 5, 7, 11, 13, 101] {
            let c = carry_coefficients(p);
            let f = ScalarField::prime(p).unwrap();
            for i in 1..p {
                let sign = if i % 2 == 1 { 1 } else { -1 };
                assert_eq!(
                    f.from_int(c[i as usize] as i64),
                    f.div(f.from_int(sign), f.from_int(i as i64))
                );
            }
        }
    }

    #[test]
    fn identities() {
        let b = prime_field_base(7);
        let x = elt(&b, 3, 5);
        assert_eq!(witt2_add(&x, &Witt2Element::zero(&b)).unwrap(), x);
        assert_eq!(witt2_mul(&x, &Witt2Element::one(&b)).unwrap(), x);
        for a in 0..7 {
            let t = elt(&b, a, 0);
            let tn = elt(&b, (7 - a) % 7, 0);
            assert!(witt2_add(&t, &tn).unwrap().is_zero());
            assert!(witt2_add(&x, &witt2_neg(&x)).unwrap().is_zero());
            for c in 0..7 {
                assert_eq!(
                    witt2_mul(&t, &elt(&b, c, 0)).unwrap(),
                    elt(&b, a * c % 7, 0)
                );
            }
        }
        let m1 = elt(&b, 6, 0);
        assert_eq!(witt2_mul(&m1, &m1).unwrap(), Witt2Element::one(&b));
        assert!(teichmuller(&b, &Poly::zero()).is_zero());
    }

    #[test]
    fn characteristic_two_negation() {
        let b = prime_field_base(2);
        let x = elt(&b, 1, 0);
        let n = witt2_neg(&x);
        assert_eq!(comps(&n), (1, 1));
        assert!(witt2_add(&x, &n).unwrap().is_zero());
        // W₂(F_2) = ℤ/4: 1 + 1 + 1 + 1 = 0 and 1 + 1 ≠ 0
        assert!(!Witt2Element::integer(&b, 2).is_zero());
        assert!(Witt2Element::integer(&b, 4).is_zero());
        let m1 = elt(&b, 1, 0);
        assert_eq!(witt2_mul(&m1, &m1).unwrap(), Witt2Element::one(&b));
    }

    #[test]
    fn base_mismatch() {
        let a = prime_field_base(5);
        let b = prime_field_base(5);
        assert_eq!(
            witt2_add(&Witt2Element::one(&a), &Witt2Element::one(&b)),
            Err(Error::BaseMismatch)
        );
        assert_eq!(
            witt2_mul(&Witt2Element::one(&a), &Witt2Element::one(&b)),
            Err(Error::BaseMismatch)
        );
    }

    #[test]
    fn teichmuller_powers() {
        let pres = build_bipartite(&e3_data(7)).unwrap();
        let base = ArtinianQuotient::truncate(&pres, 6).unwrap();
        let y = base.ring.variable(3);
        let t = teichmuller(&base, &y);
        assert_eq!(witt2_pow(&t, 4), teichmuller(&base, &base.ring.pow(&y, 4)));
    }

    #[test]
    fn e3_relations_pass() {
        let pres = build_bipartite(&e3_data(7)).unwrap();
        let report = witt_transform_check(&pres, 8).unwrap();
        assert_eq!(report.relations.len(), 3);
        assert!(report.all_passed());
        assert!(report.dimension > 0);
        assert_eq!(
            default_truncation(&pres),
            2 * pres.max_relation_degree() as u32
        );
    }

    fn single(p: u64, c: i64, uexp: u32, yexp: u32) -> ToricPresentation {
        let f = Arc::new(ScalarField::prime(p).unwrap());
        let rel = BinomialElement::binomial(
            Monomial::unit(vec![uexp], vec![0]),
            Monomial::new(f.from_int(c), vec![0], vec![yexp]),
        );
        ToricPresentation::new(f, vec!["u".into()], vec!["y".into()], vec![rel]).unwrap()
    }

    #[test]
    fn linear_relation_passes() {
        assert!(witt_transform_check(&single(7, 1, 1, 1), 4)
            .unwrap()
            .all_passed());
        assert!(witt_transform_check(&single(2, -1, 1, 1), 4)
            .unwrap()
            .all_passed());
        assert!(witt_transform_check(&single(5, -1, 2, 3), 8)
            .unwrap()
            .all_passed());
    }

    #[test]
    fn scalar_two_fails() {
        let pres = single(7, 2, 2, 1);
        assert_eq!(
            witt_transform_check(&pres, 8),
            Err(Error::NotPurelyToric { relation: 0 })
        );
        let probe = witt_probe(&pres, 8, ScalarLift::Integer).unwrap();
        assert!(!probe.all_passed());
        assert!(witt_probe(&pres, 8, ScalarLift::Teichmuller)
            .unwrap()
            .all_passed());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12_000))]
        #[test]
        fn ghost_map_is_a_ring_map(pi in 0usize..5, a in any::<(u64, u64)>(), b in any::<(u64, u64)>(), c in any::<(u64, u64)>()) {
            let p = [2u64, 3, 5, 7, 11][pi];
            thread_local! {
                static BASES: std::cell::RefCell<std::collections::HashMap<u64, Arc<ArtinianQuotient>>> = Default::default();
            }
            let base = BASES.with(|m| m.borrow_mut().entry(p).or_insert_with(|| prime_field_base(p)).clone());
            let (x, y, z) = (elt(&base, a.0 % p, a.1 % p), elt(&base, b.0 % p, b.1 % p), elt(&base, c.0 % p, c.1 % p));
            let m = p * p;
            let sum = witt2_add(&x, &y).unwrap();
            prop_assert_eq!(ghost(&sum, p), (ghost(&x, p) + ghost(&y, p)) % m);
            let prod = witt2_mul(&x, &y).unwrap();
            prop_assert_eq!(ghost(&prod, p), ghost(&x, p) * ghost(&y, p) % m);
            let l = witt2_mul(&x, &witt2_add(&y, &z).unwrap()).unwrap();
            let r = witt2_add(&witt2_mul(&x, &y).unwrap(), &witt2_mul(&x, &z).unwrap()).unwrap();
            prop_assert_eq!(l, r);
            let l = witt2_add(&witt2_add(&x, &y).unwrap(), &z).unwrap();
            let r = witt2_add(&x, &witt2_add(&y, &z).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn ring_axioms_on_truncated_quotient(cs in proptest::collection::vec(0i64..7, 12)) {
            thread_local! {
                static BASE: Arc<ArtinianQuotient> = {
                    let pres = build_bipartite(&e3_data(7)).unwrap();
                    ArtinianQuotient::truncate(&pres, 3).unwrap()
                };
            }
            let base = BASE.with(|b| b.clone());
            let r = &base.ring;
            let f = r.field().clone();
            let gen = |k: usize| {
                let mk = |o: usize| {
                    let terms = [r.one(), r.variable(0), r.variable(3), r.variable(4)];
                    terms.iter().enumerate().fold(Poly::zero(), |acc, (i, t)| r.add(&acc, &r.scale(t, f.from_int(cs[(o + i) % 12]))))
                };
                Witt2Element::new(&base, &mk(k), &mk(k + 5))
            };
            let (x, y, z) = (gen(0), gen(3), gen(7));
            let xy = witt2_mul(&x, &y).unwrap();
            prop_assert_eq!(witt2_mul(&xy, &z).unwrap(), witt2_mul(&x, &witt2_mul(&y, &z).unwrap()).unwrap());
            prop_assert_eq!(xy.clone(), witt2_mul(&y, &x).unwrap());
            let l = witt2_mul(&x, &witt2_add(&y, &z).unwrap()).unwrap();
            let rr = witt2_add(&xy, &witt2_mul(&x, &z).unwrap()).unwrap();
            prop_assert_eq!(l, rr);
            prop_assert!(witt2_sub(&x, &x).unwrap().is_zero());
            prop_assert_eq!(xy.a0, base.reduce(&r.mul(&x.a0, &y.a0)));
        }
    }
}
