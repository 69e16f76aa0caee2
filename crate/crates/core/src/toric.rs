//! Bipartite toric presentations built from a semigroup, a rational exponent
//! map and a character; the quadratic and two-variable families; tameness,
//! character trivialization and the parametrization kernel.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{Scalar, ScalarField};
use crate::binomial::{BinomialElement, Grading, Monomial, ToricPresentation};
use crate::error::{Error, Result};
use crate::lattice::{left_kernel, rational_rank, solve_integer_system, to_big, IntMatrix};
use crate::poly::{Exponents, GroebnerBasis, Poly};

/// Finitely generated subsemigroup of ℕ^n, given by its generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semigroup {
    pub rank: usize,
    pub generators: Vec<Vec<u32>>,
}

impl Semigroup {
    pub fn new(rank: usize, generators: Vec<Vec<u32>>) -> Result<Self> {
        if generators.iter().any(|g| g.len() != rank) {
            return Err(Error::InvalidInput(
                "semigroup generator has the wrong length".into(),
            ));
        }
        Ok(Semigroup { rank, generators })
    }

    /// Smallest a_i with a_i·ε_i among the generators, per axis.
    pub fn axis_multiples(&self) -> Vec<Option<u32>> {
        (0..self.rank)
            .map(|i| {
                self.generators
                    .iter()
                    .filter(|g| g[i] > 0 && g.iter().enumerate().all(|(j, &x)| j == i || x == 0))
                    .map(|g| g[i])
                    .min()
            })
            .collect()
    }

    pub fn check_full(&self) -> Result<()> {
        let rows: Vec<Vec<BigRational>> = self
            .generators
            .iter()
            .map(|g| {
                g.iter()
                    .map(|&x| BigRational::from_integer(x.into()))
                    .collect()
            })
            .collect();
        if rational_rank(&rows, self.rank) < self.rank {
            return Err(Error::NotFull(
                "generators do not span the ambient space".into(),
            ));
        }
        if let Some(i) = self.axis_multiples().iter().position(|a| a.is_none()) {
            return Err(Error::NotFull(format!(
                "no generator is a multiple of axis {i}"
            )));
        }
        Ok(())
    }

    fn as_matrix(&self) -> IntMatrix {
        to_big(
            &self
                .generators
                .iter()
                .map(|g| g.iter().map(|&x| x as i64).collect())
                .collect::<Vec<_>>(),
        )
    }
}

/// n×d rational matrix; γ ↦ γ·A.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiMatrix {
    pub rows: Vec<Vec<BigRational>>,
}

impl PhiMatrix {
    pub fn new(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        if let Some(first) = rows.first() {
            if rows.iter().any(|r| r.len() != first.len()) {
                return Err(Error::InvalidInput(
                    "exponent matrix rows differ in length".into(),
                ));
            }
        }
        Ok(PhiMatrix { rows })
    }

    pub fn from_fractions(rows: &[&[(i64, i64)]]) -> Result<Self> {
        let mut out = Vec::new();
        for r in rows {
            let mut row = Vec::new();
            for &(num, den) in r.iter() {
                if den == 0 {
                    return Err(Error::ZeroDenominator);
                }
                row.push(BigRational::new(num.into(), den.into()));
            }
            out.push(row);
        }
        PhiMatrix::new(out)
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn d(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn image(&self, gamma: &[u32]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.d()];
        for (row, &g) in self.rows.iter().zip(gamma) {
            if g == 0 {
                continue;
            }
            let g = BigRational::from_integer(g.into());
            for (o, a) in out.iter_mut().zip(row) {
                *o += a * &g;
            }
        }
        out
    }

    /// Least common multiple of all denominators.
    pub fn common_denominator(&self) -> BigInt {
        self.rows
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    pub fn row_sums(&self) -> Vec<BigRational> {
        self.rows
            .iter()
            .map(|r| r.iter().fold(BigRational::zero(), |a, x| a + x))
            .collect()
    }
}

/// Values χ(γ) ∈ κ* on the semigroup generators, in generator order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub values: Vec<Scalar>,
}

impl Character {
    pub fn trivial(len: usize) -> Self {
        Character {
            values: vec![Scalar::ONE; len],
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == Scalar::ONE)
    }
}

/// Input for a bipartite toric ring: semigroup, exponent map, character and
/// the scalar field, with variable names for display.
#[derive(Clone, Debug)]
pub struct BipartiteData {
    pub field: Arc<ScalarField>,
    pub gamma: Semigroup,
    pub phi: PhiMatrix,
    pub chi: Character,
    pub unames: Vec<String>,
    pub ynames: Vec<String>,
}

pub fn default_unames(n: usize) -> Vec<String> {
    match n {
        1 => vec!["u".into()],
        2 => vec!["u".into(), "v".into()],
        3 => vec!["u".into(), "v".into(), "w".into()],
        _ => (1..=n).map(|i| format!("u{i}")).collect(),
    }
}

pub fn default_ynames(d: usize) -> Vec<String> {
    match d {
        1 => vec!["y".into()],
        2 | 3 => ["x", "y", "z"][..d].iter().map(|s| s.to_string()).collect(),
        _ => (1..=d).map(|i| format!("y{i}")).collect(),
    }
}

impl BipartiteData {
    pub fn new(
        field: Arc<ScalarField>,
        gamma: Semigroup,
        phi: PhiMatrix,
        chi: Character,
    ) -> Result<Self> {
        if phi.n() != gamma.rank {
            return Err(Error::InvalidInput(
                "exponent matrix needs one row per semigroup coordinate".into(),
            ));
        }
        if chi.values.len() != gamma.generators.len() {
            return Err(Error::InvalidInput(
                "character needs one value per generator".into(),
            ));
        }
        if chi
            .values
            .iter()
            .any(|v| v.is_zero() || v.raw() >= field.size())
        {
            return Err(Error::InvalidInput(
                "character values must be nonzero field elements".into(),
            ));
        }
        let (unames, ynames) = (default_unames(gamma.rank), default_ynames(phi.d()));
        Ok(BipartiteData {
            field,
            gamma,
            phi,
            chi,
            unames,
            ynames,
        })
    }

    pub fn with_names(mut self, unames: Vec<String>, ynames: Vec<String>) -> Result<Self> {
        if unames.len() != self.gamma.rank || ynames.len() != self.phi.d() {
            return Err(Error::InvalidInput(
                "variable names do not match the data".into(),
            ));
        }
        self.unames = unames;
        self.ynames = ynames;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.gamma.rank
    }

    pub fn d(&self) -> usize {
        self.phi.d()
    }

    /// φ(γ) ∈ ℕ^d for every generator, or NotIntegral.
    pub fn integer_images(&self) -> Result<Vec<Vec<u32>>> {
        let report = check_integral(&self.phi, &self.gamma);
        if let Some(&i) = report.failures.first() {
            return Err(Error::NotIntegral {
                generator: i,
                image: format_rationals(&report.images[i]),
            });
        }
        report
            .images
            .iter()
            .map(|img| {
                img.iter()
                    .map(|x| x.to_integer().to_u32().ok_or(Error::Overflow("exponent")))
                    .collect()
            })
            .collect()
    }

    /// Checks Π χ(γ_i)^{c_i} = 1 for a basis of the integer relations among generators.
    pub fn check_character(&self) -> Result<()> {
        let f = &self.field;
        for v in left_kernel(&self.gamma.as_matrix(), self.n()) {
            let mut acc = f.one();
            for (c, &chi) in v.iter().zip(&self.chi.values) {
                let e = c.to_i128().ok_or(Error::Overflow("character relation"))?;
                acc = f.mul(acc, f.pow_signed(chi, e));
            }
            if acc != f.one() {
                let rel: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                return Err(Error::InconsistentCharacter {
                    relation: format!("({})", rel.join(",")),
                });
            }
        }
        Ok(())
    }
}

fn format_rationals(v: &[BigRational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Images γ·A of the generators; `failures` lists generators whose image is
/// not in ℕ^d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralityReport {
    pub images: Vec<Vec<BigRational>>,
    pub failures: Vec<usize>,
}

impl IntegralityReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_integral(a: &PhiMatrix, gamma: &Semigroup) -> IntegralityReport {
    let images: Vec<Vec<BigRational>> = gamma.generators.iter().map(|g| a.image(g)).collect();
    let failures = images
        .iter()
        .enumerate()
        .filter(|(_, img)| img.iter().any(|x| !x.is_integer() || x.is_negative()))
        .map(|(i, _)| i)
        .collect();
    IntegralityReport { images, failures }
}

/// Γ = ⟨(3,0),(1,1),(0,3)⟩ with rows (1/3, 2/3, 1) and (5/3, 1/3, 2):
/// u³ = xy²z³, uv = x²yz³, v³ = x⁵yz⁶.
pub fn e3_data(p: u64) -> Result<BipartiteData> {
    let field = Arc::new(ScalarField::prime(p)?);
    let gamma = Semigroup::new(2, vec![vec![3, 0], vec![1, 1], vec![0, 3]])?;
    let phi = PhiMatrix::from_fractions(&[&[(1, 3), (2, 3), (1, 1)], &[(5, 3), (1, 3), (2, 1)]])?;
    BipartiteData::new(field, gamma, phi, Character::trivial(3))
}

/// Γ = ⟨(2,0),(1,3),(0,6)⟩ with rows (1/2, 1, 2) and (5/6, 1, 1/3):
/// u² = xy²z⁴, uv³ = x³y⁴z³, v⁶ = x⁵y⁶z².
pub fn genfam_data(p: u64) -> Result<BipartiteData> {
    let field = Arc::new(ScalarField::prime(p)?);
    let gamma = Semigroup::new(2, vec![vec![2, 0], vec![1, 3], vec![0, 6]])?;
    let phi = PhiMatrix::from_fractions(&[&[(1, 2), (1, 1), (2, 1)], &[(5, 6), (1, 1), (1, 3)]])?;
    BipartiteData::new(field, gamma, phi, Character::trivial(3))
}

/// Relations u^γ − χ(γ)·y^{γ·A}, one per generator, graded by the rows of A.
pub fn build_bipartite(data: &BipartiteData) -> Result<ToricPresentation> {
    data.gamma.check_full()?;
    let images = data.integer_images()?;
    data.check_character()?;
    let relations = data
        .gamma
        .generators
        .iter()
        .zip(&images)
        .zip(&data.chi.values)
        .map(|((g, img), &c)| {
            BinomialElement::binomial(
                Monomial::unit(g.clone(), vec![0; data.d()]),
                Monomial::new(c, vec![0; data.n()], img.clone()),
            )
        })
        .collect();
    let pres = ToricPresentation::new(
        data.field.clone(),
        data.unames.clone(),
        data.ynames.clone(),
        relations,
    )?;
    pres.with_grading(Grading {
        weights: data.phi.rows.clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoetherReport {
    /// Every axis has a multiple among the generators.
    pub finite: bool,
    /// Every row of A sums to more than one.
    pub reduction: bool,
    pub row_sums: Vec<BigRational>,
    /// |γ·A| ≥ |γ| for every generator.
    pub norms_dominate: bool,
}

pub fn check_noether_normalization(data: &BipartiteData) -> NoetherReport {
    let finite = data.gamma.axis_multiples().iter().all(|a| a.is_some());
    let row_sums = data.phi.row_sums();
    let one = BigRational::one();
    let reduction = row_sums.iter().all(|s| s > &one);
    let norms_dominate = data.gamma.generators.iter().all(|g| {
        let img: BigRational = data
            .phi
            .image(g)
            .into_iter()
            .fold(BigRational::zero(), |a, x| a + x);
        img >= BigRational::from_integer(g.iter().map(|&x| x as u64).sum::<u64>().into())
    });
    NoetherReport {
        finite,
        reduction,
        row_sums,
        norms_dominate,
    }
}

/// u_i·u_j − b·y^β for i < j in the quadratic family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticPair {
    pub i: usize,
    pub j: usize,
    pub beta: Vec<u32>,
    pub b: Scalar,
}

/// Parameters of the two binomial families over κ[y_1..y_d].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyTParams {
    /// u_i² − a_i·y^{α_i} and u_iu_j − b_ij·y^{β_ij}.
    Quadratic {
        d: usize,
        alpha: Vec<Vec<u32>>,
        a: Vec<Scalar>,
        pairs: Vec<QuadraticPair>,
    },
    /// u^m − a·y^{α_1}, v^m − b·y^{α_2}, uv − c·y^β.
    TwoVariable {
        d: usize,
        m: u32,
        alpha: [Vec<u32>; 2],
        beta: Vec<u32>,
        a: Scalar,
        b: Scalar,
        c: Scalar,
    },
}

impl FamilyTParams {
    fn validate(&self, field: &ScalarField) -> Result<()> {
        let fail = |s: String| Err(Error::ConstraintViolated(s));
        match self {
            FamilyTParams::Quadratic { d, alpha, a, pairs } => {
                let n = alpha.len();
                if a.len() != n || alpha.iter().any(|x| x.len() != *d) {
                    return Err(Error::InvalidInput(
                        "family parameters have inconsistent sizes".into(),
                    ));
                }
                for i in 0..n {
                    for j in i + 1..n {
                        if pairs.iter().filter(|p| p.i == i && p.j == j).count() != 1 {
                            return Err(Error::InvalidInput(format!(
                                "need exactly one pair entry for ({}, {})",
                                i + 1,
                                j + 1
                            )));
                        }
                    }
                }
                for p in pairs {
                    if p.i >= p.j || p.j >= n || p.beta.len() != *d {
                        return Err(Error::InvalidInput("malformed pair entry".into()));
                    }
                    let (i, j) = (p.i + 1, p.j + 1);
                    if field.mul(a[p.i], a[p.j]) != field.mul(p.b, p.b) {
                        return fail(format!("a{i}*a{j} != b{i}{j}^2"));
                    }
                    if (0..*d).any(|k| alpha[p.i][k] + alpha[p.j][k] != 2 * p.beta[k]) {
                        return fail(format!("alpha{i} + alpha{j} != 2*beta{i}{j}"));
                    }
                }
                if a.iter()
                    .chain(pairs.iter().map(|p| &p.b))
                    .any(|c| c.is_zero())
                {
                    return fail("coefficients must be units".into());
                }
            }
            FamilyTParams::TwoVariable {
                d,
                m,
                alpha,
                beta,
                a,
                b,
                c,
            } => {
                if alpha
                    .iter()
                    .chain(std::iter::once(beta))
                    .any(|x| x.len() != *d)
                    || *m == 0
                {
                    return Err(Error::InvalidInput(
                        "family parameters have inconsistent sizes".into(),
                    ));
                }
                if [a, b, c].iter().any(|x| x.is_zero()) {
                    return fail("coefficients must be units".into());
                }
                if field.mul(*a, *b) != field.pow(*c, *m as u128) {
                    return fail("a*b != c^m".into());
                }
                if (0..*d).any(|k| alpha[0][k] + alpha[1][k] != m * beta[k]) {
                    return fail("alpha1 + alpha2 != m*beta".into());
                }
            }
        }
        Ok(())
    }

    /// Encodes the family as bipartite data; relation order matches build_family_t.
    pub fn to_bipartite(&self, field: Arc<ScalarField>) -> Result<BipartiteData> {
        self.validate(&field)?;
        let frac = |x: u32, m: u32| BigRational::new(x.into(), m.into());
        match self {
            FamilyTParams::Quadratic {
                alpha, a, pairs, ..
            } => {
                let n = alpha.len();
                let mut gens = Vec::new();
                let mut chi = Vec::new();
                for i in 0..n {
                    let mut g = vec![0; n];
                    g[i] = 2;
                    gens.push(g);
                    chi.push(a[i]);
                }
                for p in sorted_pairs(pairs) {
                    let mut g = vec![0; n];
                    g[p.i] = 1;
                    g[p.j] = 1;
                    gens.push(g);
                    chi.push(p.b);
                }
                let rows = alpha
                    .iter()
                    .map(|r| r.iter().map(|&x| frac(x, 2)).collect())
                    .collect();
                BipartiteData::new(
                    field,
                    Semigroup::new(n, gens)?,
                    PhiMatrix::new(rows)?,
                    Character { values: chi },
                )
            }
            FamilyTParams::TwoVariable {
                m, alpha, a, b, c, ..
            } => {
                let gens = vec![vec![*m, 0], vec![1, 1], vec![0, *m]];
                let rows = alpha
                    .iter()
                    .map(|r| r.iter().map(|&x| frac(x, *m)).collect())
                    .collect();
                BipartiteData::new(
                    field,
                    Semigroup::new(2, gens)?,
                    PhiMatrix::new(rows)?,
                    Character {
                        values: vec![*a, *c, *b],
                    },
                )
            }
        }
    }
}

fn sorted_pairs(pairs: &[QuadraticPair]) -> Vec<&QuadraticPair> {
    let mut v: Vec<&QuadraticPair> = pairs.iter().collect();
    v.sort_by_key(|p| (p.i, p.j));
    v
}

/// Presentation of a family member, with the grading u_i ↦ α_i/m.
pub fn build_family_t(
    field: Arc<ScalarField>,
    params: &FamilyTParams,
) -> Result<ToricPresentation> {
    params.validate(&field)?;
    let mono = |u: Vec<u32>, d: usize| Monomial::unit(u, vec![0; d]);
    let (n, d, relations, weights) = match params {
        FamilyTParams::Quadratic { d, alpha, a, pairs } => {
            let n = alpha.len();
            let mut rels = Vec::new();
            for i in 0..n {
                let mut u = vec![0; n];
                u[i] = 2;
                rels.push(BinomialElement::binomial(
                    mono(u, *d),
                    Monomial::new(a[i], vec![0; n], alpha[i].clone()),
                ));
            }
            for p in sorted_pairs(pairs) {
                let mut u = vec![0; n];
                u[p.i] = 1;
                u[p.j] = 1;
                rels.push(BinomialElement::binomial(
                    mono(u, *d),
                    Monomial::new(p.b, vec![0; n], p.beta.clone()),
                ));
            }
            let w = alpha
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| BigRational::new(x.into(), 2.into()))
                        .collect()
                })
                .collect();
            (n, *d, rels, w)
        }
        FamilyTParams::TwoVariable {
            d,
            m,
            alpha,
            beta,
            a,
            b,
            c,
        } => {
            let rels = vec![
                BinomialElement::binomial(
                    mono(vec![*m, 0], *d),
                    Monomial::new(*a, vec![0, 0], alpha[0].clone()),
                ),
                BinomialElement::binomial(
                    mono(vec![1, 1], *d),
                    Monomial::new(*c, vec![0, 0], beta.clone()),
                ),
                BinomialElement::binomial(
                    mono(vec![0, *m], *d),
                    Monomial::new(*b, vec![0, 0], alpha[1].clone()),
                ),
            ];
            let w = alpha
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| BigRational::new(x.into(), (*m).into()))
                        .collect()
                })
                .collect();
            (2, *d, rels, w)
        }
    };
    let pres = ToricPresentation::new(field, default_unames(n), default_ynames(d), relations)?;
    pres.with_grading(Grading { weights })
}

/// Rows of A linearly independent and no denominator divisible by p.
pub fn is_tame(a: &PhiMatrix, p: u64) -> bool {
    let p = BigInt::from(p);
    rational_rank(&a.rows, a.d()) == a.n()
        && a.rows
            .iter()
            .flatten()
            .all(|x| !x.denom().is_multiple_of(&p))
}

/// y_i ↦ h_i·y_i applied to every relation, each rescaled to a monic lead.
pub fn substitute_y(pres: &ToricPresentation, h: &[Scalar]) -> Result<ToricPresentation> {
    if h.len() != pres.d() || h.iter().any(|x| x.is_zero()) {
        return Err(Error::InvalidInput(
            "substitution needs one unit per y-variable".into(),
        ));
    }
    let f = pres.field();
    let apply = |m: &Monomial| {
        let c = m
            .yexp
            .iter()
            .zip(h)
            .fold(m.coeff, |acc, (&e, &hi)| f.mul(acc, f.pow(hi, e as u128)));
        Monomial::new(c, m.uexp.clone(), m.yexp.clone())
    };
    let relations = pres
        .relations()
        .iter()
        .map(|r| normalize_relation(f, &apply(&r.lead), r.tail.as_ref().map(apply)))
        .collect();
    let out = ToricPresentation::new(
        f.clone(),
        pres.unames().to_vec(),
        pres.ynames().to_vec(),
        relations,
    )?;
    match pres.grading() {
        Some(g) => out.with_grading(g.clone()),
        None => Ok(out),
    }
}

fn normalize_relation(f: &ScalarField, lead: &Monomial, tail: Option<Monomial>) -> BinomialElement {
    let inv = f.inv(lead.coeff);
    let lead = Monomial::new(Scalar::ONE, lead.uexp.clone(), lead.yexp.clone());
    match tail {
        None => BinomialElement::monomial(lead),
        Some(t) => {
            BinomialElement::binomial(lead, Monomial::new(f.mul(t.coeff, inv), t.uexp, t.yexp))
        }
    }
}

/// Relations with monic leads, for comparing presentations up to scalars.
pub fn normalized_relations(pres: &ToricPresentation) -> Vec<BinomialElement> {
    let f = pres.field();
    pres.relations()
        .iter()
        .map(|r| normalize_relation(f, &r.lead, r.tail.clone()))
        .collect()
}

/// Result of removing the character: the field may have been extended.
#[derive(Debug)]
pub struct Trivialization {
    /// Degree of the field extension used (1 when none was needed).
    pub extension_degree: u32,
    pub field: Arc<ScalarField>,
    /// h with h^{φ(γ)} = χ(γ) for every generator.
    pub substitution: Vec<Scalar>,
    /// The input data over the (possibly extended) field.
    pub data: BipartiteData,
    /// The same data with trivial character.
    pub trivial_data: BipartiteData,
    pub presentation: ToricPresentation,
}

/// Finds h ∈ (κ'*)^d with h^{φ(γ)} = χ(γ), extending κ up to degree
/// `max_extension` if needed, by solving for discrete logarithms.
pub fn trivialize_character(data: &BipartiteData, max_extension: u32) -> Result<Trivialization> {
    if !is_tame(&data.phi, data.field.p()) {
        let reason = if rational_rank(&data.phi.rows, data.d()) < data.n() {
            "rows of the exponent matrix are dependent".to_string()
        } else {
            format!("a denominator is divisible by {}", data.field.p())
        };
        return Err(Error::Wild(reason));
    }
    data.check_character()?;
    let images = data.integer_images()?;
    let phi_rows = to_big(
        &images
            .iter()
            .map(|r| r.iter().map(|&x| x as i64).collect())
            .collect::<Vec<_>>(),
    );
    for j in 1..=max_extension.max(1) {
        let (field, emb) = if j == 1 {
            let f = (*data.field).clone();
            let (_, e) = data.field.extension(1)?;
            (f, e)
        } else {
            match data.field.extension(j) {
                Ok(x) => x,
                Err(Error::FieldTooLarge { .. }) => break,
                Err(e) => return Err(e),
            }
        };
        let field = Arc::new(field);
        let chi: Vec<Scalar> = data
            .chi
            .values
            .iter()
            .map(|&c| emb.apply(&field, c))
            .collect();
        if let Some(h) = solve_logs(&field, &phi_rows, &chi, data.d())? {
            let lifted = BipartiteData {
                field: field.clone(),
                gamma: data.gamma.clone(),
                phi: data.phi.clone(),
                chi: Character { values: chi },
                unames: data.unames.clone(),
                ynames: data.ynames.clone(),
            };
            let trivial_data = BipartiteData {
                chi: Character::trivial(data.gamma.generators.len()),
                ..lifted.clone()
            };
            let presentation = build_bipartite(&trivial_data)?;
            return Ok(Trivialization {
                extension_degree: j,
                field,
                substitution: h,
                data: lifted,
                trivial_data,
                presentation,
            });
        }
    }
    Err(Error::NoSolutionInField {
        max_degree: max_extension.max(1),
    })
}

/// Solves Σ_i x_i·φ(γ)_i ≡ log χ(γ) (mod |κ*|) and returns h = g^x.
fn solve_logs(
    field: &ScalarField,
    phi_rows: &IntMatrix,
    chi: &[Scalar],
    d: usize,
) -> Result<Option<Vec<Scalar>>> {
    let order = BigInt::from(field.size() - 1);
    let r = phi_rows.len();
    if chi.iter().all(|&c| c == Scalar::ONE) {
        return Ok(Some(vec![Scalar::ONE; d]));
    }
    let g = field.generator()?;
    let mut system: IntMatrix = Vec::with_capacity(r);
    let mut rhs = Vec::with_capacity(r);
    for (i, (row, &c)) in phi_rows.iter().zip(chi).enumerate() {
        let mut line = row.clone();
        line.extend((0..r).map(|k| {
            if k == i {
                order.clone()
            } else {
                BigInt::zero()
            }
        }));
        system.push(line);
        rhs.push(BigInt::from(field.discrete_log(c)?));
    }
    let Some(z) = solve_integer_system(&system, &rhs) else {
        return Ok(None);
    };
    let h = z[..d]
        .iter()
        .map(|x| {
            let e = x
                .mod_floor(&order)
                .to_u128()
                .expect("reduced exponent fits");
            field.pow(g, e)
        })
        .collect();
    Ok(Some(h))
}

/// Monomial map y_i ↦ t^{a·e_i}, u_j ↦ t^{a·A_j} and its binomial kernel.
#[derive(Debug)]
pub struct ParametrizationKernel {
    /// a, the common denominator of A.
    pub scale: BigInt,
    /// Exponent images, u-variables first, then y-variables.
    pub images: Vec<Vec<i64>>,
    /// Reduced Gröbner basis of the kernel ideal in κ[u, y].
    pub ideal: GroebnerBasis,
    /// Kernel elements that, together with the relations, generate the kernel.
    pub generators: Vec<Poly>,
}

impl ParametrizationKernel {
    /// Every relation of the presentation lies in the kernel.
    pub fn contains_presentation(&self, pres: &ToricPresentation) -> bool {
        pres.gb().polys().iter().all(|p| self.ideal.contains(p))
    }
}

pub fn parametrization_kernel(
    data: &BipartiteData,
    pres: &ToricPresentation,
) -> Result<ParametrizationKernel> {
    if !data.chi.is_trivial() {
        return Err(Error::NontrivialCharacter);
    }
    let (n, d) = (data.n(), data.d());
    let scale = data.phi.common_denominator();
    let mut images = Vec::with_capacity(n + d);
    for row in &data.phi.rows {
        let img: Option<Vec<i64>> = row
            .iter()
            .map(|x| {
                (x * BigRational::from_integer(scale.clone()))
                    .to_integer()
                    .to_i64()
            })
            .collect();
        images.push(img.ok_or(Error::Overflow("parametrization exponent"))?);
    }
    let a = scale
        .to_i64()
        .ok_or(Error::Overflow("parametrization scale"))?;
    for i in 0..d {
        let mut e = vec![0; d];
        e[i] = a;
        images.push(e);
    }
    let ring = pres.ring();
    let mut binomials = Vec::new();
    for v in left_kernel(&to_big(&images), d) {
        let mut plus = vec![0u32; n + d];
        let mut minus = vec![0u32; n + d];
        for (k, x) in v.iter().enumerate() {
            let e = x.abs().to_u32().ok_or(Error::Overflow("kernel exponent"))?;
            if x.is_positive() {
                plus[k] = e;
            } else {
                minus[k] = e;
            }
        }
        binomials.push(ring.sub(
            &ring.monomial(Exponents(plus)),
            &ring.monomial(Exponents(minus)),
        ));
    }
    let all = Exponents(vec![1; n + d]);
    let ideal = GroebnerBasis::saturation(ring, &binomials, &all);
    let mut basis: Vec<Poly> = pres.gb().polys().to_vec();
    let mut generators = Vec::new();
    for g in ideal.polys() {
        if !GroebnerBasis::compute(ring, &basis).contains(g) {
            basis.push(g.clone());
            generators.push(g.clone());
        }
    }
    Ok(ParametrizationKernel {
        scale,
        images,
        ideal,
        generators,
    })
}
