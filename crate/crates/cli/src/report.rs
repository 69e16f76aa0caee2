//! Command implementations and their JSON shapes.

use serde_json::{json, Value};

use toricmcm::arith::PrimePower;
use toricmcm::binomial::{bounded_syzygy_search, minimal_syzygies, Monomial, ToricPresentation};
use toricmcm::fintegral::{
    contained_in, f_normalization, image_semigroup, normalization, power_integral,
    q_integral_closure, AffineSemigroup,
};
use toricmcm::frobenius::{
    annihilator_check, certify_freeness, generator_bodies, multiplicity_and_smallness,
    saturation_generators, theorem_q, verify_family_theorem, FreenessOutcome, PairWitness,
    SaturationModule,
};
use toricmcm::intersect::{chi_free_mcm, chi_from_mcm_lengths, tensor_length, RationalReport};
use toricmcm::poly::{MonomialOrder, PolyRing};
use toricmcm::toric::parametrization_kernel;
use toricmcm::witt::{default_truncation, witt_probe, witt_transform_check, ScalarLift};
use toricmcm::Error;

use crate::definition::{BuiltRing, DefinitionError};
use crate::{build, CmdResult, Failure, RingArgs};

/// Machine-readable code for an engine error.
pub fn error_code(e: &Error) -> &'static str {
    match e {
        Error::NotPrime(_) => "not_prime",
        Error::NotCongruent { .. } => "not_congruent",
        Error::DigitOutOfRange { .. } => "digit_out_of_range",
        Error::Overflow(_) => "overflow",
        Error::FieldTooLarge { .. } => "field_too_large",
        Error::NotArtinian => "not_artinian",
        Error::InfiniteBasis => "infinite_basis",
        Error::NotIntegral { .. } => "not_integral",
        Error::InconsistentCharacter { .. } => "inconsistent_character",
        Error::NotFull(_) => "not_full",
        Error::ConstraintViolated(_) => "constraint_violated",
        Error::Wild(_) => "wild",
        Error::NoSolutionInField { .. } => "no_solution_in_field",
        Error::ClosureFailure(_) => "closure_failure",
        Error::FreenessRequired => "freeness_required",
        Error::BoundExceeded { .. } => "bound_exceeded",
        Error::InfiniteIndex => "infinite_index",
        Error::ZeroDenominator => "zero_denominator",
        Error::BaseMismatch => "base_mismatch",
        Error::NotPurelyToric { .. } => "not_purely_toric",
        Error::NontrivialCharacter => "nontrivial_character",
        Error::InvalidInput(_) => "invalid_input",
    }
}

pub(crate) fn failure_json(f: &Failure) -> Value {
    match f {
        Failure::Definition(DefinitionError::Parse {
            line,
            column,
            message,
        }) => {
            json!({ "code": "parse_error", "message": message, "line": line, "column": column })
        }
        Failure::Definition(DefinitionError::Validation(m)) => {
            json!({ "code": "validation_error", "message": m })
        }
        Failure::Engine(e @ Error::ConstraintViolated(m)) => {
            json!({ "code": error_code(e), "message": e.to_string(), "constraint": m })
        }
        Failure::Engine(e) => json!({ "code": error_code(e), "message": e.to_string() }),
        Failure::Io(m) => json!({ "code": "io_error", "message": m }),
        Failure::Usage(m) => json!({ "code": "usage_error", "message": m }),
    }
}

fn prime_power(q: u64) -> Result<PrimePower, Failure> {
    Ok(PrimePower::from_q(q)?)
}

fn y_text(pres: &ToricPresentation, y: &[u32]) -> String {
    pres.format_monomial(&Monomial::unit(vec![0; pres.n()], y.to_vec()))
}

fn u_text(pres: &ToricPresentation, u: &[u32]) -> String {
    pres.format_monomial(&Monomial::unit(u.to_vec(), vec![0; pres.d()]))
}

pub(crate) fn basis(b: &BuiltRing) -> CmdResult {
    let pres = &b.presentation;
    let std = pres.standard_monomials()?;
    let monomials: Vec<Value> = std
        .monomials
        .iter()
        .map(|m| json!({ "exponents": m, "text": u_text(pres, m) }))
        .collect();
    Ok((json!({ "length": std.len(), "monomials": monomials }), 0))
}

fn closed_fiber_length(pres: &ToricPresentation) -> Result<usize, Error> {
    let ys: Vec<Monomial> = (0..pres.d())
        .map(|i| {
            let mut y = vec![0; pres.d()];
            y[i] = 1;
            Monomial::unit(vec![0; pres.n()], y)
        })
        .collect();
    pres.length_artinian(&ys)
}

pub(crate) fn pardeg(b: &BuiltRing) -> CmdResult {
    Ok((
        json!({ "length": closed_fiber_length(&b.presentation)? }),
        0,
    ))
}

fn module_json(sm: &SaturationModule, pres: &ToricPresentation) -> Value {
    let f = pres.field();
    let generators: Vec<Value> = sm
        .generators
        .iter()
        .enumerate()
        .map(|(i, g)| {
            json!({
                "index": i,
                "text": g.format(pres),
                "coeff": f.format(g.coeff),
                "u": g.ubody,
                "y": g.ydigits,
            })
        })
        .collect();
    let origins: Vec<Value> = sm
        .origins
        .iter()
        .enumerate()
        .map(|(k, o)| json!({ "generator": k, "b": o.b, "s": o.s, "coeff": f.format(o.c) }))
        .collect();
    let table: Vec<Value> = sm
        .relation_table
        .iter()
        .map(|r| {
            let lhs = format!("{} e{}", u_text(pres, &r.b), r.j);
            let text = match r.k {
                None => format!("{lhs} = 0"),
                Some(k) => {
                    let c = if r.c == f.one() {
                        String::new()
                    } else {
                        format!("{} ", f.format(r.c))
                    };
                    let y = y_text(pres, &r.s);
                    if y == "1" {
                        format!("{lhs} = {c}e{k}")
                    } else {
                        format!("{lhs} = {c}{y} e{k}")
                    }
                }
            };
            json!({ "b": r.b, "j": r.j, "s": r.s, "coeff": f.format(r.c), "k": r.k, "text": text })
        })
        .collect();
    json!({ "q": sm.q.q(), "rank": sm.rank(), "generators": generators, "origins": origins, "relation_table": table })
}

pub(crate) fn saturate(b: &BuiltRing, q: u64) -> CmdResult {
    let pres = &b.presentation;
    let sm = saturation_generators(pres, prime_power(q)?)?;
    Ok((module_json(&sm, pres), 0))
}

fn outcome_json(o: &FreenessOutcome, pres: &ToricPresentation) -> Value {
    match o {
        FreenessOutcome::Certified(c) => {
            let witnesses: Vec<Value> = c
                .witnesses
                .iter()
                .map(|w| match w {
                    PairWitness::DigitIncompatible { j, k, coordinate } => {
                        json!({ "kind": "digit_incompatible", "j": j, "k": k, "coordinate": coordinate })
                    }
                    PairWitness::Separated { j, k, a, b } => {
                        json!({ "kind": "separated", "j": j, "k": k, "a": a, "b": b })
                    }
                })
                .collect();
            json!({ "status": "certified", "rank": c.rank, "witnesses": witnesses })
        }
        FreenessOutcome::Refuted { j, k, a, b, c } => json!({
            "status": "refuted",
            "relation": { "j": j, "k": k, "a": a, "b": b, "coeff": pres.field().format(*c) },
        }),
        FreenessOutcome::Inconclusive { reason } => {
            json!({ "status": "inconclusive", "reason": reason })
        }
    }
}

fn exit_for(o: &FreenessOutcome) -> i32 {
    match o {
        FreenessOutcome::Inconclusive { .. } => 2,
        _ => 0,
    }
}

pub(crate) fn certify(b: &BuiltRing, q: u64, bound: u32) -> CmdResult {
    let pres = &b.presentation;
    let sm = saturation_generators(pres, prime_power(q)?)?;
    let outcome = certify_freeness(&sm, pres);
    let found = bounded_syzygy_search(&generator_bodies(&sm), pres, bound, q as u32);
    let minimal = minimal_syzygies(&found, pres.field());
    let syzygies: Vec<Value> = minimal
        .iter()
        .map(|s| {
            Value::Array(
                s.terms
                    .iter()
                    .map(|t| json!({ "generator": t.generator, "y": t.yexp, "coeff": pres.field().format(t.coeff) }))
                    .collect(),
            )
        })
        .collect();
    let consistent = match &outcome {
        FreenessOutcome::Certified(_) => found.is_empty(),
        _ => true,
    };
    let smallness = multiplicity_and_smallness(&sm, &outcome, pres).ok().map(|s| {
        json!({ "min_generators": s.min_generators, "pardeg_bound": s.pardeg_bound, "very_small": s.very_small })
    });
    let code = exit_for(&outcome);
    Ok((
        json!({
            "module": module_json(&sm, pres),
            "outcome": outcome_json(&outcome, pres),
            "oracle": { "bound": bound, "stride": q, "syzygies": syzygies, "consistent": consistent },
            "smallness": smallness,
        }),
        code,
    ))
}

pub(crate) fn verify_family(b: &BuiltRing, q: Option<u64>) -> CmdResult {
    let params = b.family.as_ref().ok_or_else(|| {
        Failure::Usage("verify-family needs a family definition or a bipartite block of shape (m,0),(1,1),(0,m)".into())
    })?;
    let field = b.presentation.field().clone();
    let q = match q {
        Some(q) => prime_power(q)?,
        None => theorem_q(params, field.p())?,
    };
    let report = verify_family_theorem(field, params, q)?;
    let pres = &b.presentation;
    let predicted: Vec<Value> = report
        .predicted
        .iter()
        .map(|g| {
            json!({
                "variable": g.variable,
                "power": g.power,
                "digits": g.digits,
                "closed_form": g.closed_form,
                "matched": g.matched_generator.as_ref().map(|(k, s)| json!({ "generator": k, "factor": s })),
            })
        })
        .collect();
    let symmetry: Vec<Value> = report
        .symmetry
        .iter()
        .map(|s| json!({ "i": s.i, "associate": s.associate, "exact": s.exact }))
        .collect();
    let code = exit_for(&report.outcome);
    Ok((
        json!({
            "q": report.q.q(),
            "q_exceeds_bound": report.q_exceeds_bound,
            "module": module_json(&report.module, pres),
            "predicted": predicted,
            "all_matched": report.all_matched(),
            "closed_forms_agree": report.closed_forms_agree(),
            "symmetry": symmetry,
            "outcome": outcome_json(&report.outcome, pres),
        }),
        code,
    ))
}

pub(crate) fn annihilate(b: &BuiltRing, q: u64) -> CmdResult {
    let pres = &b.presentation;
    let sm = saturation_generators(pres, prime_power(q)?)?;
    let (source, gens) = match &b.bipartite {
        Some(data) if data.chi.is_trivial() => (
            "parametrization_kernel",
            parametrization_kernel(data, pres)?.generators,
        ),
        _ => ("y_saturation", pres.y_saturation().polys().to_vec()),
    };
    let ideal: Vec<String> = gens.iter().map(|g| pres.ring().format(g)).collect();
    let annihilated = annihilator_check(&sm, &gens, pres);
    Ok((
        json!({ "q": q, "ideal_source": source, "ideal": ideal, "annihilated": annihilated }),
        0,
    ))
}

fn parse_semigroup(s: &str) -> Result<AffineSemigroup, Failure> {
    let gens: Vec<Vec<u32>> = s
        .split('|')
        .map(|t| {
            t.split_whitespace()
                .map(|x| {
                    x.parse()
                        .map_err(|_| Failure::Usage(format!("bad semigroup entry '{x}'")))
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let rank = gens.first().map_or(0, |g: &Vec<u32>| g.len());
    Ok(AffineSemigroup::new(rank, gens)?)
}

/// The semigroup to close and the characteristic to use.
pub(crate) fn semigroup_input(
    ring: &RingArgs,
    semigroup: Option<&str>,
) -> Result<(AffineSemigroup, Option<u64>), Failure> {
    if let Some(s) = semigroup {
        return Ok((parse_semigroup(s)?, ring.p));
    }
    let built = build(ring)?;
    let data = built.bipartite.as_ref().ok_or_else(|| {
        Failure::Usage("semigroup closures need a bipartite definition or --semigroup".into())
    })?;
    Ok((image_semigroup(data)?, Some(data.field.p())))
}

fn gens_json(g: &AffineSemigroup) -> Value {
    json!(g.canonical().generators)
}

pub(crate) fn fintegral(g: &AffineSemigroup, p: Option<u64>, q: Option<u64>) -> CmdResult {
    let p = p.ok_or_else(|| Failure::Usage("--p is required with --semigroup".into()))?;
    let fnorm = f_normalization(g, p)?;
    let norm = normalization(g)?;
    let pint = q_integral_closure(g, p)?;
    let powint = power_integral(g)?;
    let strict = !contained_in(&norm, &fnorm.semigroup)?;
    let chain =
        contained_in(g, &powint)? && contained_in(&powint, &pint)? && contained_in(&pint, &norm)?;
    let q_closure = match q {
        Some(q) => Some(gens_json(&q_integral_closure(g, q)?)),
        None => None,
    };
    Ok((
        json!({
            "p": p,
            "semigroup": gens_json(g),
            "pint_p": gens_json(&pint),
            "f_normalization": { "generators": gens_json(&fnorm.semigroup), "stable_q": fnorm.stable_q },
            "normalization": gens_json(&norm),
            "power_integral": gens_json(&powint),
            "strictly_inside_normalization": strict,
            "chain_holds": chain,
            "q_closure": q_closure.map(|c| json!({ "q": q, "generators": c })),
        }),
        0,
    ))
}

pub(crate) fn normalize(g: &AffineSemigroup) -> CmdResult {
    Ok((
        json!({ "semigroup": gens_json(g), "normalization": gens_json(&normalization(g)?) }),
        0,
    ))
}

pub(crate) fn powint(g: &AffineSemigroup) -> CmdResult {
    Ok((
        json!({ "semigroup": gens_json(g), "power_integral": gens_json(&power_integral(g)?) }),
        0,
    ))
}

pub(crate) fn witt_check(b: &BuiltRing, trunc: Option<u32>, probe: Option<&str>) -> CmdResult {
    let pres = &b.presentation;
    let n = trunc.unwrap_or_else(|| default_truncation(pres));
    let report = match probe {
        None => witt_transform_check(pres, n)?,
        Some("teichmuller") => witt_probe(pres, n, ScalarLift::Teichmuller)?,
        Some(_) => witt_probe(pres, n, ScalarLift::Integer)?,
    };
    let relations: Vec<Value> = report
        .relations
        .iter()
        .map(|r| json!({ "index": r.index, "relation": r.relation, "passed": r.passed, "difference": r.difference }))
        .collect();
    Ok((
        json!({
            "truncation": report.truncation,
            "dimension": report.dimension,
            "probe": probe,
            "relations": relations,
            "all_passed": report.all_passed(),
        }),
        0,
    ))
}

fn rational_json(r: &RationalReport) -> Value {
    json!({ "value": r.value.to_string(), "integral": r.integral })
}

pub(crate) fn chi(
    vars: &[String],
    a: &[String],
    b: &[String],
    p: u64,
    len_m: u64,
    len_n: u64,
    free: Option<(u64, u64)>,
) -> CmdResult {
    let field = std::sync::Arc::new(toricmcm::arith::ScalarField::prime(p)?);
    let ring = PolyRing::new(field, vars.to_vec(), MonomialOrder::grevlex(vars.len()));
    let parse = |gens: &[String]| {
        gens.iter()
            .map(|g| ring.parse(g))
            .collect::<Result<Vec<_>, _>>()
    };
    let (ia, ib) = (parse(a)?, parse(b)?);
    let len = tensor_length(&ia, &ib, &ring)?;
    let chi = match free {
        Some((rank, frac_deg)) => chi_free_mcm(len, rank, frac_deg, len_n)?,
        None => chi_from_mcm_lengths(len, len_m, len_n)?,
    };
    Ok((
        json!({ "tensor_length": len, "chi": rational_json(&chi) }),
        0,
    ))
}
