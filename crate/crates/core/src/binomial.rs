//! Binomial presentations κ[u, y]/I: normal forms, equality in R, standard
//! monomials of the closed fiber, Artinian lengths and a brute-force syzygy
//! search.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::arith::{Scalar, ScalarField};
use crate::error::{Error, Result};
use crate::lattice::{solve_rational, RationalSolution};
use crate::poly::{Exponents, GroebnerBasis, MonomialOrder, Poly, PolyRing};

/// c·u^a·y^α.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coeff: Scalar,
    pub uexp: Vec<u32>,
    pub yexp: Vec<u32>,
}

impl Monomial {
    pub fn new(coeff: Scalar, uexp: Vec<u32>, yexp: Vec<u32>) -> Self {
        Monomial { coeff, uexp, yexp }
    }

    pub fn unit(uexp: Vec<u32>, yexp: Vec<u32>) -> Self {
        Monomial {
            coeff: Scalar::ONE,
            uexp,
            yexp,
        }
    }

    pub fn y_power(d: usize, i: usize, e: u32) -> Self {
        let mut y = vec![0; d];
        y[i] = e;
        Monomial::unit(Vec::new(), y)
    }
}

/// lead − tail, or the monomial lead alone.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinomialElement {
    pub lead: Monomial,
    pub tail: Option<Monomial>,
}

impl BinomialElement {
    pub fn binomial(lead: Monomial, tail: Monomial) -> Self {
        BinomialElement {
            lead,
            tail: Some(tail),
        }
    }

    pub fn monomial(lead: Monomial) -> Self {
        BinomialElement { lead, tail: None }
    }
}

/// ℚ^d-valued degrees of the u-variables; y_i has degree e_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub weights: Vec<Vec<BigRational>>,
}

impl Grading {
    pub fn degree(&self, uexp: &[u32], yexp: &[u32]) -> Vec<BigRational> {
        let mut deg: Vec<BigRational> = yexp
            .iter()
            .map(|&e| BigRational::from_integer(e.into()))
            .collect();
        for (row, &a) in self.weights.iter().zip(uexp) {
            if a == 0 {
                continue;
            }
            let a = BigRational::from_integer(a.into());
            for (dst, w) in deg.iter_mut().zip(row) {
                *dst += w * &a;
            }
        }
        deg
    }

    pub fn is_nonnegative(&self) -> bool {
        self.weights.iter().flatten().all(|w| !w.is_negative())
    }
}

/// u-monomials forming a κ-basis of R/𝔫R, 𝔫 the ideal of the y-variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardBasis {
    pub monomials: Vec<Vec<u32>>,
}

impl StandardBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, uexp: &[u32]) -> Option<usize> {
        self.monomials.iter().position(|m| m == uexp)
    }
}

/// R = κ[u_1..u_n, y_1..y_d]/I with I generated by binomials and monomials.
/// The Gröbner basis is computed at construction; derived data is cached on
/// first use.
pub struct ToricPresentation {
    field: Arc<ScalarField>,
    unames: Vec<String>,
    ynames: Vec<String>,
    relations: Vec<BinomialElement>,
    ring: PolyRing,
    gb: GroebnerBasis,
    grading: Option<Grading>,
    standard: OnceLock<Result<StandardBasis>>,
    y_saturation: OnceLock<GroebnerBasis>,
}

impl std::fmt::Debug for ToricPresentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ToricPresentation")
            .field("field", &self.field)
            .field("u", &self.unames)
            .field("y", &self.ynames)
            .field(
                "relations",
                &self
                    .relations
                    .iter()
                    .map(|r| self.format_relation(r))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl ToricPresentation {
    /// Default order: grevlex on the u-block, then grevlex on the y-block.
    pub fn new(
        field: Arc<ScalarField>,
        unames: Vec<String>,
        ynames: Vec<String>,
        relations: Vec<BinomialElement>,
    ) -> Result<Self> {
        let order = MonomialOrder::blocks(vec![unames.len(), ynames.len()]);
        Self::with_order(field, unames, ynames, relations, order)
    }

    pub fn with_order(
        field: Arc<ScalarField>,
        unames: Vec<String>,
        ynames: Vec<String>,
        relations: Vec<BinomialElement>,
        order: MonomialOrder,
    ) -> Result<Self> {
        let (n, d) = (unames.len(), ynames.len());
        if order.nvars() != n + d {
            return Err(Error::InvalidInput(
                "monomial order does not match the variable count".into(),
            ));
        }
        for (i, r) in relations.iter().enumerate() {
            for m in std::iter::once(&r.lead).chain(r.tail.iter()) {
                if m.uexp.len() != n || m.yexp.len() != d {
                    return Err(Error::InvalidInput(format!(
                        "relation {i} has exponent vectors of the wrong length"
                    )));
                }
                if m.coeff.is_zero() || m.coeff.raw() >= field.size() {
                    return Err(Error::InvalidInput(format!(
                        "relation {i} has an invalid coefficient"
                    )));
                }
            }
        }
        let names = unames.iter().chain(&ynames).cloned().collect();
        let ring = PolyRing::new(field.clone(), names, order);
        let mut pres = ToricPresentation {
            field,
            unames,
            ynames,
            relations,
            gb: GroebnerBasis::compute(&ring, &[]),
            ring,
            grading: None,
            standard: OnceLock::new(),
            y_saturation: OnceLock::new(),
        };
        let polys: Vec<Poly> = pres
            .relations
            .iter()
            .map(|r| pres.binomial_poly(r))
            .collect();
        pres.gb = GroebnerBasis::compute(&pres.ring, &polys);
        pres.grading = pres.solve_grading();
        Ok(pres)
    }

    /// Replaces the inferred grading; fails unless every relation is homogeneous.
    pub fn with_grading(mut self, grading: Grading) -> Result<Self> {
        if grading.weights.len() != self.n() || grading.weights.iter().any(|r| r.len() != self.d())
        {
            return Err(Error::InvalidInput("grading has the wrong shape".into()));
        }
        for (i, r) in self.relations.iter().enumerate() {
            if let Some(t) = &r.tail {
                if grading.degree(&r.lead.uexp, &r.lead.yexp) != grading.degree(&t.uexp, &t.yexp) {
                    return Err(Error::InvalidInput(format!(
                        "relation {i} is not homogeneous for the grading"
                    )));
                }
            }
        }
        self.grading = Some(grading);
        Ok(self)
    }

    fn solve_grading(&self) -> Option<Grading> {
        let (n, d) = (self.n(), self.d());
        let binomials: Vec<(&Monomial, &Monomial)> = self
            .relations
            .iter()
            .filter_map(|r| r.tail.as_ref().map(|t| (&r.lead, t)))
            .collect();
        let a: Vec<Vec<BigRational>> = binomials
            .iter()
            .map(|(l, t)| {
                (0..n)
                    .map(|j| {
                        BigRational::from_integer((l.uexp[j] as i64 - t.uexp[j] as i64).into())
                    })
                    .collect()
            })
            .collect();
        let mut weights = vec![vec![BigRational::zero(); d]; n];
        for i in 0..d {
            let b: Vec<BigRational> = binomials
                .iter()
                .map(|(l, t)| {
                    BigRational::from_integer((t.yexp[i] as i64 - l.yexp[i] as i64).into())
                })
                .collect();
            match solve_rational(&a, &b, n) {
                RationalSolution::Unique(x) => {
                    for (w, xj) in weights.iter_mut().zip(x) {
                        w[i] = xj;
                    }
                }
                _ => return None,
            }
        }
        Some(Grading { weights })
    }

    pub fn field(&self) -> &Arc<ScalarField> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.unames.len()
    }

    pub fn d(&self) -> usize {
        self.ynames.len()
    }

    pub fn unames(&self) -> &[String] {
        &self.unames
    }

    pub fn ynames(&self) -> &[String] {
        &self.ynames
    }

    pub fn relations(&self) -> &[BinomialElement] {
        &self.relations
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn gb(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn grading(&self) -> Option<&Grading> {
        self.grading.as_ref()
    }

    pub fn join(&self, uexp: &[u32], yexp: &[u32]) -> Exponents {
        Exponents(uexp.iter().chain(yexp).copied().collect())
    }

    pub fn split(&self, e: &Exponents) -> (Vec<u32>, Vec<u32>) {
        (e.0[..self.n()].to_vec(), e.0[self.n()..].to_vec())
    }

    pub fn monomial_poly(&self, m: &Monomial) -> Poly {
        self.ring.term(m.coeff, self.join(&m.uexp, &m.yexp))
    }

    pub fn binomial_poly(&self, b: &BinomialElement) -> Poly {
        let lead = self.monomial_poly(&b.lead);
        match &b.tail {
            None => lead,
            Some(t) => self.ring.sub(&lead, &self.monomial_poly(t)),
        }
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        self.gb.reduce(f)
    }

    pub fn normal_form_monomial(&self, m: &Monomial) -> Poly {
        self.gb.reduce(&self.monomial_poly(m))
    }

    pub fn monomials_equal_in_r(&self, a: &Monomial, b: &Monomial) -> bool {
        let diff = self
            .ring
            .sub(&self.monomial_poly(a), &self.monomial_poly(b));
        self.normal_form(&diff).is_zero()
    }

    pub fn max_relation_degree(&self) -> u64 {
        self.relations
            .iter()
            .flat_map(|r| std::iter::once(&r.lead).chain(r.tail.iter()))
            .map(|m| m.uexp.iter().chain(&m.yexp).map(|&e| e as u64).sum::<u64>())
            .max()
            .unwrap_or(1)
    }

    /// Standard monomials of R/𝔫R, sorted by degree and then lexicographically
    /// with higher powers of earlier variables first.
    pub fn standard_monomials(&self) -> Result<&StandardBasis> {
        match self.standard.get_or_init(|| self.compute_standard()) {
            Ok(s) => Ok(s),
            Err(e) => Err(e.clone()),
        }
    }

    fn compute_standard(&self) -> Result<StandardBasis> {
        let mut gens: Vec<Poly> = self.gb.polys().to_vec();
        for i in 0..self.d() {
            gens.push(self.ring.variable(self.n() + i));
        }
        let fiber = GroebnerBasis::compute(&self.ring, &gens);
        let std = fiber.standard_monomials().ok_or(Error::InfiniteBasis)?;
        let mut monomials: Vec<Vec<u32>> =
            std.into_iter().map(|e| e.0[..self.n()].to_vec()).collect();
        monomials.sort_by(|a, b| {
            let da: u64 = a.iter().map(|&e| e as u64).sum();
            let db: u64 = b.iter().map(|&e| e as u64).sum();
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        Ok(StandardBasis { monomials })
    }

    /// κ-dimension of R/(extra), or NotArtinian.
    pub fn length_artinian(&self, extra: &[Monomial]) -> Result<usize> {
        let mut gens: Vec<Poly> = self.gb.polys().to_vec();
        gens.extend(extra.iter().map(|m| self.monomial_poly(m)));
        let gb = GroebnerBasis::compute(&self.ring, &gens);
        gb.standard_monomials()
            .map(|s| s.len())
            .ok_or(Error::NotArtinian)
    }

    /// Gröbner basis of I : (y_1⋯y_d)^∞, by elimination of an auxiliary variable.
    pub fn y_saturation(&self) -> &GroebnerBasis {
        self.y_saturation.get_or_init(|| {
            let m = self.join(&vec![0; self.n()], &vec![1; self.d()]);
            GroebnerBasis::saturation(&self.ring, self.gb.polys(), &m)
        })
    }

    pub fn is_purely_toric(&self) -> bool {
        let minus_one = self.field.from_int(-1);
        self.relations.iter().all(|r| {
            let c = match &r.tail {
                Some(t) => self.field.div(t.coeff, r.lead.coeff),
                None => return false,
            };
            c == Scalar::ONE || c == minus_one
        })
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let p = self.monomial_poly(m);
        self.ring.format(&p)
    }

    pub fn format_relation(&self, r: &BinomialElement) -> String {
        match &r.tail {
            None => format!("{} = 0", self.format_monomial(&r.lead)),
            Some(t) => format!(
                "{} = {}",
                self.format_monomial(&r.lead),
                self.format_monomial(t)
            ),
        }
    }

    /// Normal form of a monomial as a single term (coefficient, u-part, y-part),
    /// or None when the monomial vanishes in R.
    pub fn reduce_to_term(&self, m: &Monomial) -> Option<Monomial> {
        let nf = self.normal_form_monomial(m);
        match nf.terms() {
            [] => None,
            [t] => {
                let (u, y) = self.split(&t.exps);
                Some(Monomial::new(t.coeff, u, y))
            }
            _ => panic!("normal form of a monomial modulo a binomial ideal is a single term"),
        }
    }
}

/// One term s_j = c·y^μ of a syzygy Σ s_j g_j = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyTerm {
    pub generator: usize,
    pub yexp: Vec<u32>,
    pub coeff: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Syzygy {
    pub terms: Vec<SyzygyTerm>,
}

impl Syzygy {
    /// True when self is y^λ times other for some λ and a common scalar.
    pub fn is_multiple_of(&self, other: &Syzygy, field: &ScalarField) -> bool {
        if self.terms.len() != other.terms.len() || self.terms.is_empty() {
            return false;
        }
        let shift: Vec<i64> = self.terms[0]
            .yexp
            .iter()
            .zip(&other.terms[0].yexp)
            .map(|(a, b)| *a as i64 - *b as i64)
            .collect();
        if shift.iter().any(|&s| s < 0) {
            return false;
        }
        let ratio = field.div(self.terms[0].coeff, other.terms[0].coeff);
        let mut mine: Vec<&SyzygyTerm> = self.terms.iter().collect();
        mine.sort_by(|a, b| (a.generator, &a.yexp).cmp(&(b.generator, &b.yexp)));
        let mut theirs: Vec<SyzygyTerm> = other
            .terms
            .iter()
            .map(|t| SyzygyTerm {
                generator: t.generator,
                yexp: t
                    .yexp
                    .iter()
                    .zip(&shift)
                    .map(|(a, s)| (*a as i64 + s) as u32)
                    .collect(),
                coeff: field.mul(t.coeff, ratio),
            })
            .collect();
        theirs.sort_by(|a, b| (a.generator, &a.yexp).cmp(&(b.generator, &b.yexp)));
        mine.into_iter().zip(&theirs).all(|(a, b)| a == b)
    }
}

/// Default total-degree bound for the syzygy oracle.
pub const DEFAULT_SYZYGY_BOUND: u32 = 2;

/// All κ[y]-linear relations Σ s_j·g_j = 0 in R whose coefficients s_j are
/// combinations of monomials y^{stride·ν} with |ν| ≤ degree_bound, as a basis
/// of the solution space found by sparse elimination over graded pieces.
pub fn bounded_syzygy_search(
    generators: &[Monomial],
    pres: &ToricPresentation,
    degree_bound: u32,
    stride: u32,
) -> Vec<Syzygy> {
    let field = pres.field().clone();
    let ring = pres.ring();
    let d = pres.d();
    let shifts = monomials_up_to(d, degree_bound);
    let mut columns: Vec<(usize, Vec<u32>)> = Vec::new();
    for nu in &shifts {
        for j in 0..generators.len() {
            columns.push((j, nu.iter().map(|&e| e * stride).collect()));
        }
    }
    let mut pivots: HashMap<Exponents, (Poly, BTreeMap<usize, Scalar>)> = HashMap::new();
    let mut kernel = Vec::new();
    for (col, (j, mu)) in columns.iter().enumerate() {
        let g = &generators[*j];
        let y: Vec<u32> = g.yexp.iter().zip(mu).map(|(a, b)| a + b).collect();
        let mut v = pres.normal_form_monomial(&Monomial::new(g.coeff, g.uexp.clone(), y));
        let mut comb: BTreeMap<usize, Scalar> = BTreeMap::new();
        comb.insert(col, Scalar::ONE);
        loop {
            let Some(lt) = v.leading().cloned() else {
                kernel.push(comb);
                break;
            };
            match pivots.get(&lt.exps) {
                Some((pv, pc)) => {
                    let c = field.div(lt.coeff, pv.leading().expect("pivot is nonzero").coeff);
                    v = ring.sub(&v, &ring.scale(pv, c));
                    for (k, x) in pc {
                        let e = comb.entry(*k).or_insert(Scalar::ZERO);
                        *e = field.sub(*e, field.mul(c, *x));
                    }
                    comb.retain(|_, x| !x.is_zero());
                }
                None => {
                    pivots.insert(lt.exps.clone(), (v, comb));
                    break;
                }
            }
        }
    }
    kernel
        .into_iter()
        .map(|comb| Syzygy {
            terms: comb
                .into_iter()
                .map(|(col, coeff)| SyzygyTerm {
                    generator: columns[col].0,
                    yexp: columns[col].1.clone(),
                    coeff,
                })
                .collect(),
        })
        .collect()
}

/// Drops syzygies that are y-monomial multiples of earlier ones.
pub fn minimal_syzygies(found: &[Syzygy], field: &ScalarField) -> Vec<Syzygy> {
    let mut kept: Vec<Syzygy> = Vec::new();
    for s in found {
        if !kept.iter().any(|k| s.is_multiple_of(k, field)) {
            kept.push(s.clone());
        }
    }
    kept
}

/// Exponent vectors in ℕ^d of total degree ≤ bound, by degree then lexicographically.
pub fn monomials_up_to(d: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for deg in 0..=bound {
        let mut cur = vec![0u32; d];
        fill_degree(&mut cur, 0, deg, &mut out);
    }
    out
}

fn fill_degree(cur: &mut Vec<u32>, i: usize, left: u32, out: &mut Vec<Vec<u32>>) {
    if cur.is_empty() {
        if left == 0 {
            out.push(Vec::new());
        }
        return;
    }
    if i == cur.len() - 1 {
        cur[i] = left;
        out.push(cur.clone());
        cur[i] = 0;
        return;
    }
    for e in (0..=left).rev() {
        cur[i] = e;
        fill_degree(cur, i + 1, left - e, out);
    }
    cur[i] = 0;
}
