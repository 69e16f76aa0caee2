//! The Frobenius pushforward F_{q*}R and the S-module generated by the
//! saturation of *1, S = κ[y].
//!
//! Elements of F_{q*}R are written *a; r ∈ R acts by r·(*a) = *(r^q·a). A
//! `StarElement` c·*(b·y^δ) has a standard fiber monomial b and digits δ < q.
//! The action extracts the largest y-power y^μ with r^q·a = y^{qμ}·(…) in R,
//! which is what makes the generator set independent of normal-form accidents.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::arith::{adjusted_remainder, PrimePower, Scalar, ScalarField};
use crate::binomial::{Grading, Monomial, ToricPresentation};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::toric::{build_family_t, FamilyTParams};

/// coeff·*(u^ubody·y^ydigits) with every digit below q.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StarElement {
    pub q: PrimePower,
    pub coeff: Scalar,
    pub ubody: Vec<u32>,
    pub ydigits: Vec<u32>,
}

impl StarElement {
    /// *1.
    pub fn one(q: PrimePower, pres: &ToricPresentation) -> Self {
        StarElement {
            q,
            coeff: Scalar::ONE,
            ubody: vec![0; pres.n()],
            ydigits: vec![0; pres.d()],
        }
    }

    /// The body u^b·y^δ with unit coefficient.
    pub fn body(&self) -> Monomial {
        Monomial::unit(self.ubody.clone(), self.ydigits.clone())
    }

    pub fn format(&self, pres: &ToricPresentation) -> String {
        let body = pres.format_monomial(&self.body());
        if self.coeff == Scalar::ONE {
            format!("*{body}")
        } else {
            format!("{}*{body}", pres.field().format(self.coeff))
        }
    }
}

/// r·x = y^factor·element; element None means r·x = 0.
///
/// `alternatives` lists other elements e' with r·x = y^factor·e' whose bodies
/// differ from the chosen one in R (they differ by y-torsion).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarProduct {
    pub factor: Vec<u32>,
    pub element: Option<StarElement>,
    pub alternatives: Vec<StarElement>,
}

/// Normalizes c·*(Z), Z a monomial of R, to y^μ·c'·*(b·y^δ).
fn extract(
    z: &Monomial,
    coeff: Scalar,
    q: PrimePower,
    pres: &ToricPresentation,
) -> Result<StarProduct> {
    let Some(nf) = pres.reduce_to_term(z) else {
        return Ok(StarProduct {
            factor: vec![0; pres.d()],
            element: None,
            alternatives: Vec::new(),
        });
    };
    let f = pres.field();
    let qv = q.q() as u32;
    let choices = match pres.grading() {
        Some(g) => maximal_extraction(&nf, g, q, pres)?,
        None => vec![(nf.coeff, nf.uexp.clone(), nf.yexp.clone())],
    };
    let factor: Vec<u32> = choices[0].2.iter().map(|a| a / qv).collect();
    let mut elements = choices.into_iter().map(|(lambda, b, alpha)| StarElement {
        q,
        coeff: f.mul(coeff, f.qth_root(lambda, &q)),
        ubody: b,
        ydigits: alpha.iter().map(|a| a % qv).collect(),
    });
    let element = elements.next();
    Ok(StarProduct {
        factor,
        element,
        alternatives: elements.collect(),
    })
}

/// (λ, b, α) with Z = λ·b·y^α.
type Extraction = (Scalar, Vec<u32>, Vec<u32>);

/// Among standard monomials b with Z = λ·b·y^α in R, finds those whose
/// ⌊α/q⌋ is largest. Returns (λ, b, α) for each, first the smallest b in
/// standard order, keeping one representative per R-equality class of the
/// reduced bodies b·y^{α mod q}.
fn maximal_extraction(
    z: &Monomial,
    grading: &Grading,
    q: PrimePower,
    pres: &ToricPresentation,
) -> Result<Vec<Extraction>> {
    let f = pres.field();
    let std = pres.standard_monomials().map_err(|_| Error::NotArtinian)?;
    let target = grading.degree(&z.uexp, &z.yexp);
    let qv = q.q() as u32;
    #[allow(clippy::type_complexity)]
    let mut class: Vec<(Scalar, &Vec<u32>, Vec<u32>, Vec<u32>)> = Vec::new();
    for b in &std.monomials {
        let Some(alpha) = exponent_gap(&target, &grading.degree(b, &vec![0; pres.d()])) else {
            continue;
        };
        let Some(m) = pres.reduce_to_term(&Monomial::unit(b.clone(), alpha.clone())) else {
            continue;
        };
        if m.uexp != z.uexp || m.yexp != z.yexp {
            continue;
        }
        let mu = alpha.iter().map(|a| a / qv).collect();
        class.push((f.div(z.coeff, m.coeff), b, alpha, mu));
    }
    if class.is_empty() {
        return Ok(vec![(z.coeff, z.uexp.clone(), z.yexp.clone())]);
    }
    let dominates = |a: &Vec<u32>, b: &Vec<u32>| a.iter().zip(b).all(|(x, y)| x >= y);
    let maximal: Vec<usize> = (0..class.len())
        .filter(|&i| {
            !class
                .iter()
                .any(|c| c.3 != class[i].3 && dominates(&c.3, &class[i].3))
        })
        .collect();
    let best = maximal[0];
    if maximal.iter().any(|&i| class[i].3 != class[best].3) {
        return Err(Error::ClosureFailure(format!(
            "{} admits incomparable maximal y-extractions",
            pres.format_monomial(z)
        )));
    }
    let reduced = |k: usize| {
        let digits: Vec<u32> = class[k].2.iter().map(|a| a % qv).collect();
        Monomial::new(class[k].0, class[k].1.clone(), digits)
    };
    let mut kept: Vec<usize> = Vec::new();
    for &i in &maximal {
        let mi = reduced(i);
        let same = kept.iter().any(|&k| {
            let diff = pres
                .ring()
                .sub(&pres.monomial_poly(&reduced(k)), &pres.monomial_poly(&mi));
            pres.normal_form(&diff).is_zero()
        });
        if !same {
            kept.push(i);
        }
    }
    Ok(kept
        .into_iter()
        .map(|i| (class[i].0, class[i].1.clone(), class[i].2.clone()))
        .collect())
}

/// target − base when it lies in ℕ^d.
fn exponent_gap(target: &[BigRational], base: &[BigRational]) -> Option<Vec<u32>> {
    target
        .iter()
        .zip(base)
        .map(|(t, b)| {
            let d = t - b;
            if d.is_integer() && !d.is_negative() {
                d.to_integer().to_u32()
            } else {
                None
            }
        })
        .collect()
}

/// r·x = *(r^q·body(x)), renormalized.
pub fn star_action(r: &Monomial, x: &StarElement, pres: &ToricPresentation) -> Result<StarProduct> {
    let q = x.q;
    let qv = u32::try_from(q.q()).map_err(|_| Error::Overflow("q"))?;
    let f = pres.field();
    let mul = |a: &[u32], b: &[u32]| -> Result<Vec<u32>> {
        a.iter()
            .zip(b)
            .map(|(&s, &t)| {
                s.checked_mul(qv)
                    .and_then(|v| v.checked_add(t))
                    .ok_or(Error::Overflow("star exponent"))
            })
            .collect()
    };
    let z = Monomial::new(
        f.pow(r.coeff, q.q() as u128),
        mul(&r.uexp, &x.ubody)?,
        mul(&r.yexp, &x.ydigits)?,
    );
    extract(&z, x.coeff, q, pres)
}

/// λ with body(a) = λ·body(b) in R, if any.
fn body_ratio(a: &Monomial, b: &Monomial, pres: &ToricPresentation) -> Option<Scalar> {
    let na = pres.reduce_to_term(a)?;
    let nb = pres.reduce_to_term(b)?;
    (na.uexp == nb.uexp && na.yexp == nb.yexp).then(|| pres.field().div(na.coeff, nb.coeff))
}

/// c with x = c·g as elements of F_{q*}R, when g is a scalar multiple of x.
fn star_ratio(x: &StarElement, g: &StarElement, pres: &ToricPresentation) -> Option<Scalar> {
    let f = pres.field();
    let lambda = body_ratio(&x.body(), &g.body(), pres)?;
    Some(f.div(f.mul(x.coeff, f.qth_root(lambda, &x.q)), g.coeff))
}

/// b·e_j = c·y^s·e_k; target None when the product vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationRow {
    pub b: Vec<u32>,
    pub j: usize,
    pub s: Vec<u32>,
    pub c: Scalar,
    pub k: Option<usize>,
}

/// How a generator arose: b·*1 = c·y^s·e.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorOrigin {
    pub b: Vec<u32>,
    pub s: Vec<u32>,
    pub c: Scalar,
}

/// The S-span of the elements extracted from b·*1, b standard, with its
/// relation table. e_0 is always *1.
///
/// This is the S-submodule of F_{q*}R generated by those elements. When R
/// has S-torsion the full saturation of *1 also contains torsion elements
/// such as *(vy − u²x) for e3-type rings; they are not part of this module.
#[derive(Clone, Debug)]
pub struct SaturationModule {
    pub q: PrimePower,
    pub generators: Vec<StarElement>,
    pub origins: Vec<GeneratorOrigin>,
    pub relation_table: Vec<RelationRow>,
}

impl SaturationModule {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn row(&self, b: &[u32], j: usize) -> Option<&RelationRow> {
        self.relation_table.iter().find(|r| r.b == b && r.j == j)
    }

    /// Index of the generator that is a scalar multiple of *(body), if any.
    pub fn find_body(&self, body: &Monomial, pres: &ToricPresentation) -> Option<usize> {
        self.generators
            .iter()
            .position(|g| body_ratio(body, &g.body(), pres).is_some())
    }
}

pub fn saturation_generators(pres: &ToricPresentation, q: PrimePower) -> Result<SaturationModule> {
    let n = pres
        .standard_monomials()
        .map_err(|_| Error::NotArtinian)?
        .len();
    saturation_generators_in_order(pres, q, &(0..n).collect::<Vec<_>>())
}

/// Same as `saturation_generators`, visiting the standard basis in the given
/// order; the result is canonically sorted and does not depend on it.
pub fn saturation_generators_in_order(
    pres: &ToricPresentation,
    q: PrimePower,
    order: &[usize],
) -> Result<SaturationModule> {
    if q.p() != pres.field().p() {
        return Err(Error::InvalidInput(
            "q must be a power of the characteristic".into(),
        ));
    }
    let std = pres.standard_monomials().map_err(|_| Error::NotArtinian)?;
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..std.len()).collect::<Vec<_>>() {
        return Err(Error::InvalidInput(
            "order must be a permutation of the standard basis".into(),
        ));
    }
    let one = StarElement::one(q, pres);
    let mut actions: Vec<(usize, StarProduct)> = Vec::new();
    for &i in order {
        let b = &std.monomials[i];
        actions.push((
            i,
            star_action(&Monomial::unit(b.clone(), vec![0; pres.d()]), &one, pres)?,
        ));
    }
    actions.sort_by_key(|(i, _)| *i);
    let mut found: Vec<StarElement> = Vec::new();
    for (_, prod) in &actions {
        let Some(e) = &prod.element else { continue };
        let known = std::iter::once(e)
            .chain(&prod.alternatives)
            .any(|x| found.iter().any(|g| star_ratio(x, g, pres).is_some()));
        if !known {
            found.push(StarElement {
                coeff: Scalar::ONE,
                ..e.clone()
            });
        }
    }
    found.sort_by_key(|g| {
        (
            std.position(&g.ubody).unwrap_or(usize::MAX),
            g.ydigits.clone(),
        )
    });
    if let Some(pos) = found
        .iter()
        .position(|g| star_ratio(&one, g, pres).is_some())
    {
        let e0 = found.remove(pos);
        found.insert(0, e0);
    } else {
        found.insert(0, one.clone());
    }
    let mut module = SaturationModule {
        q,
        generators: found,
        origins: Vec::new(),
        relation_table: Vec::new(),
    };
    for j in 0..module.generators.len() {
        for b in &std.monomials {
            let r = Monomial::unit(b.clone(), vec![0; pres.d()]);
            let prod = star_action(&r, &module.generators[j], pres)?;
            let row = match prod.element {
                None => RelationRow {
                    b: b.clone(),
                    j,
                    s: prod.factor,
                    c: Scalar::ZERO,
                    k: None,
                },
                Some(e) => {
                    let hit = std::iter::once(&e).chain(&prod.alternatives).find_map(|x| {
                        module
                            .generators
                            .iter()
                            .enumerate()
                            .find_map(|(k, g)| star_ratio(x, g, pres).map(|c| (k, c)))
                    });
                    let Some((k, c)) = hit else {
                        return Err(Error::ClosureFailure(format!(
                            "{}·e{j} = {} is not an S-multiple of a listed generator",
                            pres.format_monomial(&r),
                            e.format(pres)
                        )));
                    };
                    RelationRow {
                        b: b.clone(),
                        j,
                        s: prod.factor,
                        c,
                        k: Some(k),
                    }
                }
            };
            module.relation_table.push(row);
        }
    }
    for k in 0..module.generators.len() {
        let origin = module
            .relation_table
            .iter()
            .find(|r| r.j == 0 && r.k == Some(k))
            .map(|r| GeneratorOrigin {
                b: r.b.clone(),
                s: r.s.clone(),
                c: r.c,
            })
            .expect("every generator comes from some b·*1");
        module.origins.push(origin);
    }
    Ok(module)
}

/// Why a pair of generators cannot combine in a relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairWitness {
    /// deg e_k − deg e_j ∉ qℤ^d; `coordinate` is the first offending one.
    DigitIncompatible {
        j: usize,
        k: usize,
        coordinate: usize,
    },
    /// y^{qa}·body_j and y^{qb}·body_k are distinct monomials modulo
    /// I : (y_1⋯y_d)^∞, so no y-multiples of them agree in R.
    Separated {
        j: usize,
        k: usize,
        a: Vec<u32>,
        b: Vec<u32>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessCertificate {
    pub rank: usize,
    pub witnesses: Vec<PairWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FreenessOutcome {
    Certified(FreenessCertificate),
    /// An explicit S-relation: y^{q·a}·e_j = c·y^{q·b}·e_k (k = j for torsion, with c = 0).
    Refuted {
        j: usize,
        k: usize,
        a: Vec<u32>,
        b: Vec<u32>,
        c: Scalar,
    },
    Inconclusive {
        reason: String,
    },
}

impl FreenessOutcome {
    pub fn certificate(&self) -> Option<&FreenessCertificate> {
        match self {
            FreenessOutcome::Certified(c) => Some(c),
            _ => None,
        }
    }
}

/// Decides whether the generators are S-linearly independent.
///
/// A relation Σ s_j·e_j = 0 unfolds to Σ s_j^q·body_j = 0 in R. The ideal is
/// homogeneous for the y-grading, so the relation splits into monomial
/// classes; two generators can meet in one class only if their degrees agree
/// modulo q and some y-multiples coincide in R, which happens exactly when
/// the cancelled forms coincide modulo the y-saturation J of I. A single
/// generator gives a relation alone exactly when its body lies in J.
pub fn certify_freeness(sm: &SaturationModule, pres: &ToricPresentation) -> FreenessOutcome {
    let Some(grading) = pres.grading() else {
        return FreenessOutcome::Inconclusive {
            reason: "presentation carries no y-grading".into(),
        };
    };
    let j_gb = pres.y_saturation();
    let nf_j = |m: &Monomial| j_gb.reduce(&pres.monomial_poly(m));
    let q = sm.q.q() as i64;
    let d = pres.d();
    let bodies: Vec<Monomial> = sm.generators.iter().map(|g| g.body()).collect();
    for (j, b) in bodies.iter().enumerate() {
        if nf_j(b).is_zero() {
            return FreenessOutcome::Refuted {
                j,
                k: j,
                a: vec![0; d],
                b: vec![0; d],
                c: Scalar::ZERO,
            };
        }
    }
    let degrees: Vec<Vec<BigRational>> = bodies
        .iter()
        .map(|b| grading.degree(&b.uexp, &b.yexp))
        .collect();
    let mut witnesses = Vec::new();
    for j in 0..bodies.len() {
        for k in j + 1..bodies.len() {
            let diff: Vec<BigRational> = degrees[k]
                .iter()
                .zip(&degrees[j])
                .map(|(x, y)| x - y)
                .collect();
            let qr = BigRational::from_integer(q.into());
            let bad = diff.iter().position(|x| !(x / &qr).is_integer());
            if let Some(coordinate) = bad {
                witnesses.push(PairWitness::DigitIncompatible { j, k, coordinate });
                continue;
            }
            let t: Vec<i64> = diff
                .iter()
                .map(|x| (x / &qr).to_integer().to_i64().expect("small degree"))
                .collect();
            let a: Vec<u32> = t.iter().map(|&x| x.max(0) as u32).collect();
            let b: Vec<u32> = t.iter().map(|&x| (-x).max(0) as u32).collect();
            let shift = |m: &Monomial, s: &[u32]| {
                Monomial::unit(
                    m.uexp.clone(),
                    m.yexp
                        .iter()
                        .zip(s)
                        .map(|(e, x)| e + x * q as u32)
                        .collect(),
                )
            };
            let (left, right) = (nf_j(&shift(&bodies[j], &a)), nf_j(&shift(&bodies[k], &b)));
            let (lt, rt) = (&left.terms()[0], &right.terms()[0]);
            if lt.exps == rt.exps {
                let c = pres.field().div(lt.coeff, rt.coeff);
                return FreenessOutcome::Refuted { j, k, a, b, c };
            }
            witnesses.push(PairWitness::Separated { j, k, a, b });
        }
    }
    FreenessOutcome::Certified(FreenessCertificate {
        rank: bodies.len(),
        witnesses,
    })
}

/// The generator bodies as monomials, for the brute-force syzygy oracle.
pub fn generator_bodies(sm: &SaturationModule) -> Vec<Monomial> {
    sm.generators.iter().map(|g| g.body()).collect()
}

/// True when g^q·body_j = 0 in R for every g and every generator.
pub fn annihilator_check(
    sm: &SaturationModule,
    ideal_gens: &[Poly],
    pres: &ToricPresentation,
) -> bool {
    let ring = pres.ring();
    ideal_gens.iter().all(|g| {
        let gq = ring.frobenius_power(g, sm.q.q());
        sm.generators.iter().all(|e| {
            pres.normal_form(&ring.mul(&gq, &pres.monomial_poly(&e.body())))
                .is_zero()
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smallness {
    pub min_generators: usize,
    pub pardeg_bound: usize,
    pub very_small: bool,
}

pub fn multiplicity_and_smallness(
    sm: &SaturationModule,
    outcome: &FreenessOutcome,
    pres: &ToricPresentation,
) -> Result<Smallness> {
    let cert = outcome.certificate().ok_or(Error::FreenessRequired)?;
    let ys: Vec<Monomial> = (0..pres.d())
        .map(|i| Monomial::y_power(pres.d(), i, 1))
        .map(|m| Monomial {
            uexp: vec![0; pres.n()],
            ..m
        })
        .collect();
    let pardeg_bound = pres.length_artinian(&ys)?;
    debug_assert_eq!(cert.rank, sm.rank());
    Ok(Smallness {
        min_generators: cert.rank,
        pardeg_bound,
        very_small: cert.rank <= pardeg_bound,
    })
}

/// Smallest q = p^e with q ≡ 1 (mod m) and q > m·N, N the largest exponent
/// entry of the family.
pub fn theorem_q(params: &FamilyTParams, p: u64) -> Result<PrimePower> {
    let (m, big_n) = family_bounds(params);
    PrimePower::smallest_admissible(p, m as u64, m as u64 * big_n as u64)
}

fn family_bounds(params: &FamilyTParams) -> (u32, u32) {
    match params {
        FamilyTParams::Quadratic { alpha, pairs, .. } => {
            let n = alpha
                .iter()
                .flatten()
                .chain(pairs.iter().flat_map(|p| &p.beta))
                .copied()
                .max()
                .unwrap_or(0);
            (2, n)
        }
        FamilyTParams::TwoVariable { m, alpha, beta, .. } => (
            *m,
            alpha
                .iter()
                .flatten()
                .chain(beta)
                .copied()
                .max()
                .unwrap_or(0),
        ),
    }
}

/// Predicted generator u_i^j·y^{digits} from the digit formulas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredictedGenerator {
    pub variable: usize,
    pub power: u32,
    /// (j·r·α) mod q with r = (q − 1)/m.
    pub digits: Vec<u32>,
    /// (q·ã − j·α)/m with ã the adjusted remainder of j·α mod m, on the
    /// coordinates where j·α < q; None elsewhere.
    pub closed_form: Vec<Option<u32>>,
    /// (k, s) with *(u_i^j·y^digits) = c·y^s·e_k for a computed generator e_k.
    pub matched_generator: Option<(usize, Vec<u32>)>,
}

/// For the two-variable family: is e_{m−i,0} a y-multiple of e_{0,i} in R
/// (associate), and are the bodies equal outright (exact)?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryCheck {
    pub i: u32,
    pub associate: bool,
    pub exact: bool,
}

#[derive(Clone, Debug)]
pub struct FamilyReport {
    pub q: PrimePower,
    /// q > m·N, the size condition of the general argument; reported, not enforced.
    pub q_exceeds_bound: bool,
    pub module: SaturationModule,
    pub predicted: Vec<PredictedGenerator>,
    pub symmetry: Vec<SymmetryCheck>,
    pub outcome: FreenessOutcome,
}

impl FamilyReport {
    pub fn all_matched(&self) -> bool {
        self.predicted.iter().all(|p| p.matched_generator.is_some())
    }

    pub fn closed_forms_agree(&self) -> bool {
        self.predicted.iter().all(|p| {
            p.closed_form
                .iter()
                .zip(&p.digits)
                .all(|(c, d)| c.is_none_or(|c| c == *d))
        })
    }
}

pub fn verify_family_theorem(
    field: Arc<ScalarField>,
    params: &FamilyTParams,
    q: PrimePower,
) -> Result<FamilyReport> {
    let (m, big_n) = family_bounds(params);
    if !(q.q() - 1).is_multiple_of(m as u64) {
        return Err(Error::NotCongruent {
            q: q.q(),
            m: m as u64,
        });
    }
    let pres = build_family_t(field, params)?;
    let module = saturation_generators(&pres, q)?;
    let outcome = certify_freeness(&module, &pres);
    let r = (q.q() - 1) / m as u64;
    let predict = |variable: usize, power: u32, alpha: &[u32]| -> Result<PredictedGenerator> {
        let mut digits = Vec::new();
        let mut closed_form = Vec::new();
        for &a in alpha {
            let ja = power as u64 * a as u64;
            digits.push(((ja as u128 * r as u128) % q.q() as u128) as u32);
            closed_form.push(if ja == 0 {
                Some(0)
            } else if ja < q.q() {
                let adj = adjusted_remainder(ja, m as u64)?.value;
                Some(((q.q() * adj - ja) / m as u64) as u32)
            } else {
                None
            });
        }
        let mut uexp = vec![0; pres.n()];
        uexp[variable] = power;
        let body = Monomial::unit(uexp, digits.clone());
        let prod = extract(&body, Scalar::ONE, q, &pres)?;
        let matched_generator = prod
            .element
            .iter()
            .chain(&prod.alternatives)
            .find_map(|e| module.find_body(&e.body(), &pres))
            .map(|k| (k, prod.factor.clone()));
        Ok(PredictedGenerator {
            variable,
            power,
            digits,
            closed_form,
            matched_generator,
        })
    };
    let mut predicted = Vec::new();
    let mut symmetry = Vec::new();
    match params {
        FamilyTParams::Quadratic { alpha, .. } => {
            for (i, a) in alpha.iter().enumerate() {
                predicted.push(predict(i, 1, a)?);
            }
        }
        FamilyTParams::TwoVariable { alpha, .. } => {
            for (var, a) in alpha.iter().enumerate() {
                for j in 1..m {
                    predicted.push(predict(var, j, a)?);
                }
            }
            for i in 1..m {
                let left = predicted
                    .iter()
                    .find(|p| p.variable == 0 && p.power == m - i)
                    .expect("predicted");
                let right = predicted
                    .iter()
                    .find(|p| p.variable == 1 && p.power == i)
                    .expect("predicted");
                let lb = Monomial::unit(vec![m - i, 0], left.digits.clone());
                let rb = Monomial::unit(vec![0, i], right.digits.clone());
                let exact = body_ratio(&lb, &rb, &pres).is_some();
                let associate = exact || associate_in_r(&lb, &rb, &pres);
                symmetry.push(SymmetryCheck {
                    i,
                    associate,
                    exact,
                });
            }
        }
    }
    Ok(FamilyReport {
        q,
        q_exceeds_bound: q.q() > m as u64 * big_n as u64,
        module,
        predicted,
        symmetry,
        outcome,
    })
}

/// y^a·x = c·y^b·z in R for some a, b ∈ ℕ^d; decided on the grading and the
/// y-saturation.
fn associate_in_r(x: &Monomial, z: &Monomial, pres: &ToricPresentation) -> bool {
    let Some(g) = pres.grading() else {
        return false;
    };
    let (dx, dz) = (g.degree(&x.uexp, &x.yexp), g.degree(&z.uexp, &z.yexp));
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (s, t) in dz.iter().zip(&dx) {
        let diff = s - t;
        if !diff.is_integer() {
            return false;
        }
        let v = diff.to_integer().to_i64().expect("small degree");
        a.push(v.max(0) as u32);
        b.push((-v).max(0) as u32);
    }
    let shift = |m: &Monomial, s: &[u32]| {
        Monomial::unit(
            m.uexp.clone(),
            m.yexp.iter().zip(s).map(|(e, x)| e + x).collect(),
        )
    };
    let j = pres.y_saturation();
    let (l, r) = (
        j.reduce(&pres.monomial_poly(&shift(x, &a))),
        j.reduce(&pres.monomial_poly(&shift(z, &b))),
    );
    match (l.terms(), r.terms()) {
        ([lt], [rt]) => lt.exps == rt.exps,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binomial::bounded_syzygy_search;
    use crate::toric::tests::{e3_data, genfam_data};
    use crate::toric::{build_bipartite, parametrization_kernel};

    fn um(u: &[u32], d: usize) -> Monomial {
        Monomial::unit(u.to_vec(), vec![0; d])
    }

    fn body(u: &[u32], y: &[u32]) -> Monomial {
        Monomial::unit(u.to_vec(), y.to_vec())
    }

    fn idx(sm: &SaturationModule, pres: &ToricPresentation, u: &[u32], y: &[u32]) -> usize {
        sm.find_body(&body(u, y), pres)
            .unwrap_or_else(|| panic!("no generator for {u:?} {y:?}"))
    }

    #[test]
    fn e3_star_actions() {
        let pres = build_bipartite(&e3_data(7)).unwrap();
        let q = PrimePower::new(7, 1).unwrap();
        let one = StarElement::one(q, &pres);
        let a = star_action(&um(&[1, 0], 3), &one, &pres).unwrap();
        assert_eq!(a.factor, vec![0, 0, 0]);
        assert_eq!(a.element.unwrap().format(&pres), "*u x^2 y^4 z^6");
        let a = star_action(&um(&[2, 0], 3), &one, &pres).unwrap();
        assert_eq!(a.factor, vec![0, 1, 1]);
        let e = a.element.unwrap();
        let expected = StarElement {
            q,
            coeff: Scalar::ONE,
            ubody: vec![2, 0],
            ydigits: vec![4, 1, 5],
        };
        assert_eq!(star_ratio(&e, &expected, &pres), Some(Scalar::ONE));
        let a = star_action(&um(&[0, 0], 3), &one, &pres).unwrap();
        assert_eq!(a.element.unwrap(), one);
    }

    #[test]
    fn e3_module_q7() {
        let pres = build_bipartite(&e3_data(7)).unwrap();
        let sm = saturation_generators(&pres, PrimePower::new(7, 1).unwrap()).unwrap();
        assert_eq!(sm.rank(), 3);
        let e1 = idx(&sm, &pres, &[1, 0], &[2, 4, 6]);
        let e2 = idx(&sm, &pres, &[2, 0], &[4, 1, 5]);
        assert_eq!(idx(&sm, &pres, &[0, 0], &[0, 0, 0]), 0);
        let check = |b: &[u32], s: &[u32], k: usize| {
            let row = sm.row(b, 0).unwrap();
            assert_eq!((row.s.as_slice(), row.k), (s, Some(k)), "row {b:?}");
        };
        check(&[1, 0], &[0, 0, 0], e1);
        check(&[2, 0], &[0, 1, 1], e2);
        check(&[0, 1], &[1, 0, 1], e2);
        check(&[0, 2], &[3, 0, 3], e1);
        assert_eq!(certify_freeness(&sm, &pres).certificate().unwrap().rank, 3);
        for (k, o) in sm.origins.iter().enumerate() {
            let x = star_action(
                &Monomial::unit(o.b.clone(), vec![0; 3]),
                &StarElement::one(sm.q, &pres),
                &pres,
            )
            .unwrap();
            assert_eq!(
                star_ratio(&x.element.unwrap(), &sm.generators[k], &pres),
                Some(o.c)
            );
        }
    }

    #[test]
    fn permutation_invariance() {
        let pres = build_bipartite(&genfam_data(11)).unwrap();
        let q = PrimePower::new(11, 1).unwrap();
        let base = saturation_generators(&pres, q).unwrap();
        let rev: Vec<usize> = (0..9).rev().collect();
        let other = saturation_generators_in_order(&pres, q, &rev).unwrap();
        assert_eq!(base.generators, other.generators);
        assert_eq!(base.relation_table, other.relation_table);
    }

    #[test]
    fn regular_ring_module() {
        let field = Arc::new(ScalarField::prime(5).unwrap());
        let pres = ToricPresentation::new(field, vec![], vec!["x".into()], vec![]).unwrap();
        let q = PrimePower::new(5, 1).unwrap();
        let sm = saturation_generators(&pres, q).unwrap();
        assert_eq!(sm.rank(), 1);
        assert_eq!(certify_freeness(&sm, &pres).certificate().unwrap().rank, 1);
        let out = multiplicity_and_smallness(&sm, &certify_freeness(&sm, &pres), &pres).unwrap();
        assert_eq!(
            out,
            Smallness {
                min_generators: 1,
                pardeg_bound: 1,
                very_small: true
            }
        );
    }

    #[test]
    fn smallness_requires_certificate() {
        let pres = build_bipartite(&e3_data(7)).unwrap();
        let sm = saturation_generators(&pres, PrimePower::new(7, 1).unwrap()).unwrap();
        let outcome = FreenessOutcome::Inconclusive {
            reason: "test".into(),
        };
        assert_eq!(
            multiplicity_and_smallness(&sm, &outcome, &pres),
            Err(Error::FreenessRequired)
        );
        let ok = multiplicity_and_smallness(&sm, &certify_freeness(&sm, &pres), &pres).unwrap();
        assert_eq!(
            ok,
            Smallness {
                min_generators: 3,
                pardeg_bound: 5,
                very_small: true
            }
        );
    }

    #[test]
    fn planted_duplicate_is_refuted() {
        let pres = build_bipartite(&e3_data(7)).unwrap();
        let mut sm = saturation_generators(&pres, PrimePower::new(7, 1).unwrap()).unwrap();
        let dup = StarElement {
            coeff: pres.field().from_int(3),
            ..sm.generators[1].clone()
        };
        sm.generators.push(dup);
        assert!(matches!(
            certify_freeness(&sm, &pres),
            FreenessOutcome::Refuted { .. }
        ));
        let found = bounded_syzygy_search(&generator_bodies(&sm), &pres, 1, 7);
        assert!(!found.is_empty());
    }

    #[test]
    fn e3_annihilator() {
        for p in [7u64, 3] {
            let data = e3_data(p);
            let pres = build_bipartite(&data).unwrap();
            let sm = saturation_generators(&pres, PrimePower::new(p, 1).unwrap()).unwrap();
            let ker = parametrization_kernel(&data, &pres).unwrap();
            assert!(annihilator_check(&sm, &ker.generators, &pres), "p = {p}");
        }
    }

    #[test]
    fn nonzero_product_is_not_annihilated() {
        let pres = build_bipartite(&e3_data(7)).unwrap();
        let sm = saturation_generators(&pres, PrimePower::new(7, 1).unwrap()).unwrap();
        let x = pres.ring().variable(2);
        assert!(!annihilator_check(&sm, &[x], &pres));
    }

    #[test]
    fn family_e3_q7() {
        let field = Arc::new(ScalarField::prime(7).unwrap());
        let params = FamilyTParams::TwoVariable {
            d: 3,
            m: 3,
            alpha: [vec![1, 2, 3], vec![5, 1, 6]],
            beta: vec![2, 1, 3],
            a: Scalar::ONE,
            b: Scalar::ONE,
            c: Scalar::ONE,
        };
        let rep = verify_family_theorem(field, &params, PrimePower::new(7, 1).unwrap()).unwrap();
        assert!(!rep.q_exceeds_bound);
        let u1 = rep
            .predicted
            .iter()
            .find(|p| p.variable == 0 && p.power == 1)
            .unwrap();
        assert_eq!(u1.digits, vec![2, 4, 6]);
        assert_eq!(u1.closed_form, vec![Some(2), Some(4), Some(6)]);
        assert!(rep.all_matched());
        assert!(rep.closed_forms_agree());
        assert!(rep.symmetry.iter().all(|s| s.associate));
        assert!(rep.outcome.certificate().is_some());
        assert_eq!(theorem_q(&params, 7).unwrap().q(), 49);
    }

    #[test]
    fn family_quadratic_minimal() {
        let field = Arc::new(ScalarField::prime(3).unwrap());
        let params = FamilyTParams::Quadratic {
            d: 1,
            alpha: vec![vec![2], vec![2]],
            a: vec![Scalar::ONE, Scalar::ONE],
            pairs: vec![crate::toric::QuadraticPair {
                i: 0,
                j: 1,
                beta: vec![2],
                b: Scalar::ONE,
            }],
        };
        let rep = verify_family_theorem(field, &params, PrimePower::new(3, 1).unwrap()).unwrap();
        assert_eq!(rep.predicted.len(), 2);
        assert!(rep.predicted.iter().all(|p| p.digits == vec![2]));
        let (a, b) = (
            rep.predicted[0].matched_generator.clone(),
            rep.predicted[1].matched_generator.clone(),
        );
        assert!(a.is_some());
        assert_eq!(a, b);
        assert_eq!(rep.module.rank(), 2);
    }
}
