//! Ring-definition files.
//!
//! Line-oriented `key = value` pairs. A header gives the field and variable
//! names, followed by exactly one of the sections `[relations]`,
//! `[bipartite]` or `[family]`. `#` starts a comment.
//!
//! ```text
//! p = 7
//! u = u v
//! y = x y z
//!
//! [bipartite]
//! gamma = 3 0 | 1 1 | 0 3
//! row = 1/3 2/3 1
//! row = 5/3 1/3 2
//! chi = 1 1 1
//! ```

use std::fmt;
use std::sync::Arc;

use toricmcm::arith::ScalarField;
use toricmcm::binomial::{BinomialElement, Monomial, ToricPresentation};
use toricmcm::poly::{MonomialOrder, PolyRing};
use toricmcm::toric::{
    build_bipartite, build_family_t, default_unames, default_ynames, BipartiteData, Character,
    FamilyTParams, PhiMatrix, QuadraticPair, Semigroup,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DefinitionError {
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    Validation(String),
}

impl fmt::Display for DefinitionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DefinitionError::Parse {
                line,
                column,
                message,
            } => write!(f, "{line}:{column}: {message}"),
            DefinitionError::Validation(m) => write!(f, "invalid definition: {m}"),
        }
    }
}

impl std::error::Error for DefinitionError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    TwoVariable {
        m: u32,
        alpha1: Vec<u32>,
        alpha2: Vec<u32>,
        beta: Vec<u32>,
        a: i64,
        b: i64,
        c: i64,
    },
    Quadratic {
        alpha: Vec<Vec<u32>>,
        a: Vec<i64>,
        pairs: Vec<(usize, usize, Vec<u32>, i64)>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    /// Relations as written, `lhs = rhs`.
    Relations(Vec<String>),
    Bipartite {
        gamma: Vec<Vec<u32>>,
        rows: Vec<Vec<(i64, i64)>>,
        chi: Vec<i64>,
    },
    Family(FamilySpec),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingDefinition {
    pub p: u64,
    pub k: u32,
    pub unames: Option<Vec<String>>,
    pub ynames: Option<Vec<String>>,
    pub body: Body,
}

/// Presentation plus whatever structured data the definition carried.
pub struct BuiltRing {
    pub presentation: ToricPresentation,
    pub bipartite: Option<BipartiteData>,
    pub family: Option<FamilyTParams>,
}

pub fn preset(name: &str) -> Option<RingDefinition> {
    let text = match name {
        "e3" => PRESET_E3,
        "genfam" => PRESET_GENFAM,
        "regular" => PRESET_REGULAR,
        _ => return None,
    };
    Some(RingDefinition::parse(text).expect("presets parse"))
}

pub const PRESET_NAMES: &[&str] = &["e3", "genfam", "regular"];

const PRESET_E3: &str = "\
p = 7
u = u v
y = x y z

[bipartite]
gamma = 3 0 | 1 1 | 0 3
row = 1/3 2/3 1
row = 5/3 1/3 2
chi = 1 1 1
";

const PRESET_GENFAM: &str = "\
p = 11
u = u v
y = x y z

[bipartite]
gamma = 2 0 | 1 3 | 0 6
row = 1/2 1 2
row = 5/6 1 1/3
chi = 1 1 1
";

const PRESET_REGULAR: &str = "\
p = 7
u =
y = x y z

[relations]
";

fn perr(line: usize, column: usize, message: impl Into<String>) -> DefinitionError {
    DefinitionError::Parse {
        line,
        column,
        message: message.into(),
    }
}

struct Entry {
    line: usize,
    column: usize,
    key: String,
    value: String,
}

fn parse_uints(e: &Entry, s: &str) -> Result<Vec<u32>, DefinitionError> {
    s.split_whitespace()
        .map(|t| {
            t.parse().map_err(|_| {
                perr(
                    e.line,
                    e.column,
                    format!("expected a nonnegative integer, got '{t}'"),
                )
            })
        })
        .collect()
}

fn parse_ints(e: &Entry, s: &str) -> Result<Vec<i64>, DefinitionError> {
    s.split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| perr(e.line, e.column, format!("expected an integer, got '{t}'")))
        })
        .collect()
}

fn parse_int(e: &Entry) -> Result<i64, DefinitionError> {
    e.value.trim().parse().map_err(|_| {
        perr(
            e.line,
            e.column,
            format!("expected an integer, got '{}'", e.value),
        )
    })
}

fn parse_fraction(e: &Entry, t: &str) -> Result<(i64, i64), DefinitionError> {
    let bad = || perr(e.line, e.column, format!("expected a fraction, got '{t}'"));
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.parse().map_err(|_| bad())?, d.parse().map_err(|_| bad())?),
        None => (t.parse().map_err(|_| bad())?, 1),
    };
    if d <= 0 {
        return Err(bad());
    }
    Ok((n, d))
}

fn parse_tuples(e: &Entry) -> Result<Vec<Vec<u32>>, DefinitionError> {
    e.value.split('|').map(|t| parse_uints(e, t)).collect()
}

fn format_fraction(&(n, d): &(i64, i64)) -> String {
    if d == 1 {
        n.to_string()
    } else {
        format!("{n}/{d}")
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn join_tuples(v: &[Vec<u32>]) -> String {
    v.iter().map(|t| join(t)).collect::<Vec<_>>().join(" | ")
}

impl RingDefinition {
    pub fn parse(text: &str) -> Result<Self, DefinitionError> {
        let mut header: Vec<Entry> = Vec::new();
        let mut section: Option<(usize, String)> = None;
        let mut entries: Vec<Entry> = Vec::new();
        let mut relations: Vec<(usize, String)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("");
            let trimmed = content.trim();
            if trimmed.is_empty() {
                continue;
            }
            let column = content.len() - content.trim_start().len() + 1;
            if trimmed.starts_with('[') {
                if !trimmed.ends_with(']') {
                    return Err(perr(line, column, "unterminated section header"));
                }
                if section.is_some() {
                    return Err(perr(line, column, "only one section is allowed"));
                }
                let name = trimmed[1..trimmed.len() - 1].trim().to_string();
                if !["relations", "bipartite", "family"].contains(&name.as_str()) {
                    return Err(perr(line, column + 1, format!("unknown section '{name}'")));
                }
                section = Some((line, name));
                continue;
            }
            if section.as_ref().is_some_and(|(_, s)| s == "relations") {
                relations.push((line, trimmed.to_string()));
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(perr(line, column, "expected 'key = value'"));
            };
            let value_column = key.len() + 2 + (value.len() - value.trim_start().len());
            let entry = Entry {
                line,
                column: value_column,
                key: key.trim().to_string(),
                value: value.trim().to_string(),
            };
            if section.is_some() {
                entries.push(entry);
            } else {
                header.push(entry);
            }
        }

        let mut p = None;
        let mut k = 1;
        let mut unames = None;
        let mut ynames = None;
        for e in &header {
            match e.key.as_str() {
                "p" => {
                    p = Some(
                        parse_int(e)?
                            .try_into()
                            .map_err(|_| perr(e.line, e.column, "p must be positive"))?,
                    )
                }
                "k" => {
                    k = parse_int(e)?
                        .try_into()
                        .map_err(|_| perr(e.line, e.column, "k must be positive"))?
                }
                "u" => unames = Some(e.value.split_whitespace().map(String::from).collect()),
                "y" => ynames = Some(e.value.split_whitespace().map(String::from).collect()),
                other => return Err(perr(e.line, 1, format!("unknown header key '{other}'"))),
            }
        }
        let p = p.ok_or_else(|| perr(1, 1, "missing 'p'"))?;
        let Some((section_line, section)) = section else {
            return Err(perr(text.lines().count().max(1), 1, "missing section"));
        };
        let body = match section.as_str() {
            "relations" => Body::Relations(relations.into_iter().map(|(_, r)| r).collect()),
            "bipartite" => {
                let (mut gamma, mut rows, mut chi) = (None, Vec::new(), None);
                for e in &entries {
                    match e.key.as_str() {
                        "gamma" => gamma = Some(parse_tuples(e)?),
                        "row" => rows.push(
                            e.value
                                .split_whitespace()
                                .map(|t| parse_fraction(e, t))
                                .collect::<Result<Vec<_>, _>>()?,
                        ),
                        "chi" => chi = Some(parse_ints(e, &e.value)?),
                        other => {
                            return Err(perr(e.line, 1, format!("unknown bipartite key '{other}'")))
                        }
                    }
                }
                let gamma = gamma.ok_or_else(|| perr(section_line, 1, "missing 'gamma'"))?;
                let chi = chi.unwrap_or_else(|| vec![1; gamma.len()]);
                Body::Bipartite { gamma, rows, chi }
            }
            _ => Body::Family(parse_family(&entries, section_line)?),
        };
        Ok(RingDefinition {
            p,
            k,
            unames,
            ynames,
            body,
        })
    }

    /// Canonical text; parsing it gives back the same definition.
    pub fn to_text(&self) -> String {
        let mut s = format!("p = {}\n", self.p);
        if self.k != 1 {
            s += &format!("k = {}\n", self.k);
        }
        if let Some(u) = &self.unames {
            s += &format!("u = {}\n", u.join(" "));
        }
        if let Some(y) = &self.ynames {
            s += &format!("y = {}\n", y.join(" "));
        }
        s.push('\n');
        match &self.body {
            Body::Relations(rels) => {
                s += "[relations]\n";
                for r in rels {
                    s += &format!("{r}\n");
                }
            }
            Body::Bipartite { gamma, rows, chi } => {
                s += "[bipartite]\n";
                s += &format!("gamma = {}\n", join_tuples(gamma));
                for r in rows {
                    s += &format!(
                        "row = {}\n",
                        r.iter().map(format_fraction).collect::<Vec<_>>().join(" ")
                    );
                }
                s += &format!("chi = {}\n", join(chi));
            }
            Body::Family(FamilySpec::TwoVariable {
                m,
                alpha1,
                alpha2,
                beta,
                a,
                b,
                c,
            }) => {
                s += "[family]\ntype = two-variable\n";
                s += &format!(
                    "m = {m}\nalpha1 = {}\nalpha2 = {}\nbeta = {}\n",
                    join(alpha1),
                    join(alpha2),
                    join(beta)
                );
                s += &format!("a = {a}\nb = {b}\nc = {c}\n");
            }
            Body::Family(FamilySpec::Quadratic { alpha, a, pairs }) => {
                s += "[family]\ntype = quadratic\n";
                s += &format!("alpha = {}\na = {}\n", join_tuples(alpha), join(a));
                for (i, j, beta, b) in pairs {
                    s += &format!("pair = {i} {j} : {} : {b}\n", join(beta));
                }
            }
        }
        s
    }

    pub fn with_p(&self, p: Option<u64>) -> RingDefinition {
        RingDefinition {
            p: p.unwrap_or(self.p),
            ..self.clone()
        }
    }

    pub fn build(&self) -> Result<BuiltRing, BuildError> {
        let field = Arc::new(ScalarField::new(self.p, self.k)?);
        let scalar = |n: i64| field.from_int(n);
        match &self.body {
            Body::Relations(rels) => {
                let unames = self.unames.clone().unwrap_or_default();
                let ynames = self
                    .ynames
                    .clone()
                    .ok_or_else(|| DefinitionError::Validation("missing 'y' names".into()))?;
                let (n, d) = (unames.len(), ynames.len());
                let names: Vec<String> = unames.iter().chain(&ynames).cloned().collect();
                let ring = PolyRing::new(field.clone(), names, MonomialOrder::blocks(vec![n, d]));
                let mut relations = Vec::new();
                for r in rels {
                    let (l, rhs) = r.split_once('=').ok_or_else(|| {
                        DefinitionError::Validation(format!("relation '{r}' has no '='"))
                    })?;
                    let term = |side: &str| -> Result<Option<Monomial>, BuildError> {
                        let poly = ring.parse(side)?;
                        match poly.terms() {
                            [] => Ok(None),
                            [t] => Ok(Some(Monomial::new(
                                t.coeff,
                                t.exps.0[..n].to_vec(),
                                t.exps.0[n..].to_vec(),
                            ))),
                            _ => Err(DefinitionError::Validation(format!(
                                "'{}' is not a single term",
                                side.trim()
                            ))
                            .into()),
                        }
                    };
                    let lead = term(l)?.ok_or_else(|| {
                        DefinitionError::Validation(format!("relation '{r}' has a zero left side"))
                    })?;
                    relations.push(match term(rhs)? {
                        Some(t) => BinomialElement::binomial(lead, t),
                        None => BinomialElement::monomial(lead),
                    });
                }
                let presentation = ToricPresentation::new(field, unames, ynames, relations)?;
                Ok(BuiltRing {
                    presentation,
                    bipartite: None,
                    family: None,
                })
            }
            Body::Bipartite { gamma, rows, chi } => {
                let n = gamma.first().map_or(0, |g| g.len());
                let refs: Vec<&[(i64, i64)]> = rows.iter().map(|r| r.as_slice()).collect();
                let phi = PhiMatrix::from_fractions(&refs)?;
                let chi = Character {
                    values: chi.iter().map(|&c| scalar(c)).collect(),
                };
                let data = BipartiteData::new(field, Semigroup::new(n, gamma.clone())?, phi, chi)?;
                let data = data.with_names(
                    self.unames.clone().unwrap_or_else(|| default_unames(n)),
                    self.ynames
                        .clone()
                        .unwrap_or_else(|| default_ynames(rows.first().map_or(0, |r| r.len()))),
                )?;
                let presentation = build_bipartite(&data)?;
                let family = two_variable_shape(&data);
                Ok(BuiltRing {
                    presentation,
                    bipartite: Some(data),
                    family,
                })
            }
            Body::Family(spec) => {
                let params = match spec {
                    FamilySpec::TwoVariable {
                        m,
                        alpha1,
                        alpha2,
                        beta,
                        a,
                        b,
                        c,
                    } => FamilyTParams::TwoVariable {
                        d: alpha1.len(),
                        m: *m,
                        alpha: [alpha1.clone(), alpha2.clone()],
                        beta: beta.clone(),
                        a: scalar(*a),
                        b: scalar(*b),
                        c: scalar(*c),
                    },
                    FamilySpec::Quadratic { alpha, a, pairs } => FamilyTParams::Quadratic {
                        d: alpha.first().map_or(0, |r| r.len()),
                        alpha: alpha.clone(),
                        a: a.iter().map(|&x| scalar(x)).collect(),
                        pairs: pairs
                            .iter()
                            .map(|(i, j, beta, b)| QuadraticPair {
                                i: *i,
                                j: *j,
                                beta: beta.clone(),
                                b: scalar(*b),
                            })
                            .collect(),
                    },
                };
                let presentation = build_family_t(field, &params)?;
                Ok(BuiltRing {
                    presentation,
                    bipartite: None,
                    family: Some(params),
                })
            }
        }
    }
}

/// Γ = ⟨(m,0),(1,1),(0,m)⟩ is a two-variable family member.
fn two_variable_shape(data: &BipartiteData) -> Option<FamilyTParams> {
    let g = &data.gamma.generators;
    if g.len() != 3 || g[1] != [1, 1] || g[0].len() != 2 || g[0][1] != 0 || g[2] != [0, g[0][0]] {
        return None;
    }
    let m = g[0][0];
    let img = data.integer_images().ok()?;
    let [a, c, b] = [data.chi.values[0], data.chi.values[1], data.chi.values[2]];
    Some(FamilyTParams::TwoVariable {
        d: data.d(),
        m,
        alpha: [img[0].clone(), img[2].clone()],
        beta: img[1].clone(),
        a,
        b,
        c,
    })
}

fn parse_family(entries: &[Entry], section_line: usize) -> Result<FamilySpec, DefinitionError> {
    let get = |key: &str| entries.iter().find(|e| e.key == key);
    let need =
        |key: &str| get(key).ok_or_else(|| perr(section_line, 1, format!("missing '{key}'")));
    let kind = need("type")?;
    match kind.value.as_str() {
        "two-variable" => {
            for e in entries {
                if !["type", "m", "alpha1", "alpha2", "beta", "a", "b", "c"]
                    .contains(&e.key.as_str())
                {
                    return Err(perr(e.line, 1, format!("unknown family key '{}'", e.key)));
                }
            }
            let m = need("m")?;
            let m = parse_int(m)?
                .try_into()
                .map_err(|_| perr(m.line, m.column, "m must be positive"))?;
            let vec = |k: &str| need(k).and_then(|e| parse_uints(e, &e.value));
            let scalar = |k: &str| get(k).map_or(Ok(1), parse_int);
            Ok(FamilySpec::TwoVariable {
                m,
                alpha1: vec("alpha1")?,
                alpha2: vec("alpha2")?,
                beta: vec("beta")?,
                a: scalar("a")?,
                b: scalar("b")?,
                c: scalar("c")?,
            })
        }
        "quadratic" => {
            let alpha = parse_tuples(need("alpha")?)?;
            let a = match get("a") {
                Some(e) => parse_ints(e, &e.value)?,
                None => vec![1; alpha.len()],
            };
            let mut pairs = Vec::new();
            for e in entries {
                match e.key.as_str() {
                    "type" | "alpha" | "a" => {}
                    "pair" => {
                        let parts: Vec<&str> = e.value.split(':').collect();
                        if parts.len() != 3 {
                            return Err(perr(e.line, e.column, "expected 'i j : beta : b'"));
                        }
                        let ij = parse_uints(e, parts[0])?;
                        if ij.len() != 2 {
                            return Err(perr(e.line, e.column, "expected two indices"));
                        }
                        let b = parse_ints(e, parts[2])?;
                        if b.len() != 1 {
                            return Err(perr(e.line, e.column, "expected one coefficient"));
                        }
                        pairs.push((
                            ij[0] as usize,
                            ij[1] as usize,
                            parse_uints(e, parts[1])?,
                            b[0],
                        ));
                    }
                    other => return Err(perr(e.line, 1, format!("unknown family key '{other}'"))),
                }
            }
            Ok(FamilySpec::Quadratic { alpha, a, pairs })
        }
        other => Err(perr(
            kind.line,
            kind.column,
            format!("unknown family type '{other}'"),
        )),
    }
}

/// Definition errors and engine errors raised while building.
#[derive(Debug)]
pub enum BuildError {
    Definition(DefinitionError),
    Engine(toricmcm::Error),
}

impl From<DefinitionError> for BuildError {
    fn from(e: DefinitionError) -> Self {
        BuildError::Definition(e)
    }
}

impl From<toricmcm::Error> for BuildError {
    fn from(e: toricmcm::Error) -> Self {
        BuildError::Engine(e)
    }
}
