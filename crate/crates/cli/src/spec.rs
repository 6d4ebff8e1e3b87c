//! JSON spec documents for semigroups and algebras.
//!
//! Every spec is an object with a `"kind"` field. Parsing dispatches on the
//! kind and reports schema errors as JSON pointers.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use eggert::algebras::{
    contracted_algebra, direct_sum, example_2_4_algebra, forbidden_word_algebra, ideal_generated,
    quotient, subalgebra_generated, tensor_product, truncated_polynomial, FiniteAlgebra,
};
use eggert::explorer::EXAMPLE_2_4_SEED;
use eggert::semigroups::{
    example_4_1, example_4_2, example_4_3, from_numerical, power_label, ElementSubset, Semigroup,
};
use eggert::{NumericalPresentation, PrimeField, Relation, Scalar, SemigroupWithZero, Subspace};

#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error("invalid JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("{pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("{pointer}: {source}")]
    Build {
        pointer: String,
        #[source]
        source: eggert::Error,
    },
}

fn schema(pointer: &str, message: impl Into<String>) -> SpecError {
    SpecError::Schema {
        pointer: if pointer.is_empty() {
            "/".into()
        } else {
            pointer.into()
        },
        message: message.into(),
    }
}

fn build<T>(pointer: &str, r: eggert::Result<T>) -> Result<T, SpecError> {
    r.map_err(|source| SpecError::Build {
        pointer: if pointer.is_empty() {
            "/".into()
        } else {
            pointer.into()
        },
        source,
    })
}

fn escape(token: &str) -> String {
    token.replace('~', "~0").replace('/', "~1")
}

/// Deserializes `value` (with `kind` removed) and prefixes error paths.
fn fields<T: DeserializeOwned>(value: &Value, pointer: &str) -> Result<T, SpecError> {
    let mut object = value.as_object().cloned().unwrap_or_default();
    object.remove("kind");
    serde_path_to_error::deserialize(Value::Object(object)).map_err(|e| {
        let mut p = pointer.to_string();
        for seg in e.path().iter() {
            use serde_path_to_error::Segment;
            match seg {
                Segment::Seq { index } => p.push_str(&format!("/{index}")),
                Segment::Map { key } => p.push_str(&format!("/{}", escape(key))),
                Segment::Enum { variant } => p.push_str(&format!("/{}", escape(variant))),
                Segment::Unknown => {}
            }
        }
        schema(&p, e.into_inner().to_string())
    })
}

fn kind_of<'a>(value: &'a Value, pointer: &str) -> Result<&'a str, SpecError> {
    let obj = value
        .as_object()
        .ok_or_else(|| schema(pointer, "expected an object"))?;
    obj.get("kind")
        .ok_or_else(|| schema(&format!("{pointer}/kind"), "missing field `kind`"))?
        .as_str()
        .ok_or_else(|| schema(&format!("{pointer}/kind"), "expected a string"))
}

const SEMIGROUP_KINDS: &[&str] = &[
    "numerical",
    "cyclic",
    "product",
    "group_product",
    "rees",
    "adjoin_zero",
    "example_4_1",
    "example_4_2",
    "example_4_3",
];

const ALGEBRA_KINDS: &[&str] = &[
    "contracted",
    "truncated_poly",
    "subalgebra",
    "quotient",
    "tensor",
    "direct_sum",
    "forbidden_words",
    "example_2_4",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SemigroupSpec {
    Numerical {
        generators: Vec<u64>,
        bound: u64,
        relations: Vec<Relation>,
    },
    Cyclic {
        bound: usize,
    },
    Product {
        left: Box<SemigroupSpec>,
        right: Box<SemigroupSpec>,
    },
    GroupProduct {
        of: Box<SemigroupSpec>,
        group_order: usize,
    },
    Rees {
        of: Box<SemigroupSpec>,
        ideal: Vec<String>,
    },
    AdjoinZero {
        group_order: usize,
    },
    #[serde(rename = "example_4_1")]
    Example41 {
        p: usize,
        i: usize,
    },
    #[serde(rename = "example_4_2")]
    Example42 {
        p: usize,
    },
    #[serde(rename = "example_4_3")]
    Example43 {
        n: usize,
        p: usize,
    },
}

/// A basis label, or an exponent `e` standing for the label `x^e`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TermKey {
    Exponent(u64),
    Label(String),
}

impl TermKey {
    fn label(&self) -> String {
        match self {
            TermKey::Exponent(e) => power_label("x", *e),
            TermKey::Label(l) => l.clone(),
        }
    }
}

/// An element: a single basis label, or `(key, coefficient)` terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementSpec {
    Label(String),
    Terms(Vec<(TermKey, i64)>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlgebraSpec {
    Contracted {
        semigroup: SemigroupSpec,
        p: u64,
    },
    TruncatedPoly {
        p: u64,
        vars: usize,
        degree: usize,
        commutative: bool,
    },
    Subalgebra {
        of: Box<AlgebraSpec>,
        generators: Vec<ElementSpec>,
    },
    Quotient {
        of: Box<AlgebraSpec>,
        relators: Vec<Vec<(TermKey, i64)>>,
    },
    Tensor {
        left: Box<AlgebraSpec>,
        right: Box<AlgebraSpec>,
    },
    DirectSum {
        left: Box<AlgebraSpec>,
        right: Box<AlgebraSpec>,
    },
    ForbiddenWords {
        p: u64,
        d: usize,
        degree: usize,
    },
    #[serde(rename = "example_2_4")]
    Example24 {
        p: u64,
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum SpecDocument {
    Semigroup(SemigroupSpec),
    Algebra(AlgebraSpec),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NumericalFields {
    generators: Vec<u64>,
    bound: u64,
    #[serde(default)]
    relations: Vec<Relation>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CyclicFields {
    bound: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairFields {
    left: Value,
    right: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupProductFields {
    of: Value,
    group_order: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ReesFields {
    of: Value,
    ideal: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFields {
    group_order: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Example41Fields {
    p: usize,
    i: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Example42Fields {
    p: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Example43Fields {
    n: usize,
    p: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ContractedFields {
    semigroup: Value,
    p: u64,
}

fn default_true() -> bool {
    true
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TruncatedFields {
    p: u64,
    vars: usize,
    degree: usize,
    #[serde(default = "default_true")]
    commutative: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SubalgebraFields {
    of: Value,
    generators: Vec<ElementSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QuotientFields {
    of: Value,
    relators: Vec<Vec<(TermKey, i64)>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ForbiddenFields {
    p: u64,
    d: usize,
    degree: usize,
}

fn default_seed() -> u64 {
    EXAMPLE_2_4_SEED
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Example24Fields {
    p: u64,
    #[serde(default = "default_seed")]
    seed: u64,
}

pub fn parse_semigroup_value(v: &Value, pointer: &str) -> Result<SemigroupSpec, SpecError> {
    let kind = kind_of(v, pointer)?;
    let sub = |name: &str| format!("{pointer}/{name}");
    Ok(match kind {
        "numerical" => {
            let f: NumericalFields = fields(v, pointer)?;
            SemigroupSpec::Numerical {
                generators: f.generators,
                bound: f.bound,
                relations: f.relations,
            }
        }
        "cyclic" => SemigroupSpec::Cyclic {
            bound: fields::<CyclicFields>(v, pointer)?.bound,
        },
        "product" => {
            let f: PairFields = fields(v, pointer)?;
            SemigroupSpec::Product {
                left: Box::new(parse_semigroup_value(&f.left, &sub("left"))?),
                right: Box::new(parse_semigroup_value(&f.right, &sub("right"))?),
            }
        }
        "group_product" => {
            let f: GroupProductFields = fields(v, pointer)?;
            SemigroupSpec::GroupProduct {
                of: Box::new(parse_semigroup_value(&f.of, &sub("of"))?),
                group_order: f.group_order,
            }
        }
        "rees" => {
            let f: ReesFields = fields(v, pointer)?;
            SemigroupSpec::Rees {
                of: Box::new(parse_semigroup_value(&f.of, &sub("of"))?),
                ideal: f.ideal,
            }
        }
        "adjoin_zero" => SemigroupSpec::AdjoinZero {
            group_order: fields::<GroupFields>(v, pointer)?.group_order,
        },
        "example_4_1" => {
            let f: Example41Fields = fields(v, pointer)?;
            SemigroupSpec::Example41 { p: f.p, i: f.i }
        }
        "example_4_2" => SemigroupSpec::Example42 {
            p: fields::<Example42Fields>(v, pointer)?.p,
        },
        "example_4_3" => {
            let f: Example43Fields = fields(v, pointer)?;
            SemigroupSpec::Example43 { n: f.n, p: f.p }
        }
        other => {
            return Err(schema(
                &sub("kind"),
                format!("unknown semigroup kind {other:?}, expected one of {SEMIGROUP_KINDS:?}"),
            ))
        }
    })
}

pub fn parse_algebra_value(v: &Value, pointer: &str) -> Result<AlgebraSpec, SpecError> {
    let kind = kind_of(v, pointer)?;
    let sub = |name: &str| format!("{pointer}/{name}");
    Ok(match kind {
        "contracted" => {
            let f: ContractedFields = fields(v, pointer)?;
            AlgebraSpec::Contracted {
                semigroup: parse_semigroup_value(&f.semigroup, &sub("semigroup"))?,
                p: f.p,
            }
        }
        "truncated_poly" => {
            let f: TruncatedFields = fields(v, pointer)?;
            AlgebraSpec::TruncatedPoly {
                p: f.p,
                vars: f.vars,
                degree: f.degree,
                commutative: f.commutative,
            }
        }
        "subalgebra" => {
            let f: SubalgebraFields = fields(v, pointer)?;
            AlgebraSpec::Subalgebra {
                of: Box::new(parse_algebra_value(&f.of, &sub("of"))?),
                generators: f.generators,
            }
        }
        "quotient" => {
            let f: QuotientFields = fields(v, pointer)?;
            AlgebraSpec::Quotient {
                of: Box::new(parse_algebra_value(&f.of, &sub("of"))?),
                relators: f.relators,
            }
        }
        "tensor" | "direct_sum" => {
            let f: PairFields = fields(v, pointer)?;
            let left = Box::new(parse_algebra_value(&f.left, &sub("left"))?);
            let right = Box::new(parse_algebra_value(&f.right, &sub("right"))?);
            if kind == "tensor" {
                AlgebraSpec::Tensor { left, right }
            } else {
                AlgebraSpec::DirectSum { left, right }
            }
        }
        "forbidden_words" => {
            let f: ForbiddenFields = fields(v, pointer)?;
            AlgebraSpec::ForbiddenWords {
                p: f.p,
                d: f.d,
                degree: f.degree,
            }
        }
        "example_2_4" => {
            let f: Example24Fields = fields(v, pointer)?;
            AlgebraSpec::Example24 {
                p: f.p,
                seed: f.seed,
            }
        }
        other => {
            return Err(schema(
                &sub("kind"),
                format!("unknown algebra kind {other:?}, expected one of {ALGEBRA_KINDS:?}"),
            ))
        }
    })
}

pub fn parse_document_value(v: &Value, pointer: &str) -> Result<SpecDocument, SpecError> {
    let kind = kind_of(v, pointer)?;
    if SEMIGROUP_KINDS.contains(&kind) {
        Ok(SpecDocument::Semigroup(parse_semigroup_value(v, pointer)?))
    } else if ALGEBRA_KINDS.contains(&kind) {
        Ok(SpecDocument::Algebra(parse_algebra_value(v, pointer)?))
    } else {
        Err(schema(
            &format!("{pointer}/kind"),
            format!("unknown kind {kind:?}"),
        ))
    }
}

pub fn parse_document(text: &str) -> Result<SpecDocument, SpecError> {
    let v: Value = serde_json::from_str(text)?;
    parse_document_value(&v, "")
}

fn field(p: u64, pointer: &str) -> Result<PrimeField, SpecError> {
    build(&format!("{pointer}/p"), PrimeField::new(p))
}

impl SemigroupSpec {
    pub fn build(&self) -> Result<SemigroupWithZero, SpecError> {
        self.build_at("")
    }

    fn build_at(&self, pointer: &str) -> Result<SemigroupWithZero, SpecError> {
        let sub = |name: &str| format!("{pointer}/{name}");
        match self {
            SemigroupSpec::Numerical {
                generators,
                bound,
                relations,
            } => {
                let pres = NumericalPresentation {
                    generators: generators.clone(),
                    bound: *bound,
                    relations: relations.clone(),
                };
                build(pointer, from_numerical(&pres))
            }
            SemigroupSpec::Cyclic { bound } => {
                build(pointer, SemigroupWithZero::cyclic_truncated(*bound))
            }
            SemigroupSpec::Product { left, right } => {
                let (l, r) = (left.build_at(&sub("left"))?, right.build_at(&sub("right"))?);
                build(pointer, l.direct_product(&r))
            }
            SemigroupSpec::GroupProduct { of, group_order } => {
                let s = of.build_at(&sub("of"))?;
                let g = build(&sub("group_order"), Semigroup::cyclic_group(*group_order))?;
                build(pointer, s.product_with_group(&g))
            }
            SemigroupSpec::Rees { of, ideal } => {
                let s = of.build_at(&sub("of"))?;
                let labels: Vec<&str> = ideal.iter().map(String::as_str).collect();
                let members = build(&sub("ideal"), ElementSubset::from_labels(&s, &labels))?;
                build(pointer, s.rees_quotient(&members))
            }
            SemigroupSpec::AdjoinZero { group_order } => {
                let g = build(&sub("group_order"), Semigroup::cyclic_group(*group_order))?;
                build(pointer, SemigroupWithZero::adjoin_zero(&g))
            }
            SemigroupSpec::Example41 { p, i } => build(pointer, example_4_1(*p, *i).map(|x| x.0)),
            SemigroupSpec::Example42 { p } => build(pointer, example_4_2(*p, *p).map(|x| x.0)),
            SemigroupSpec::Example43 { n, p } => build(pointer, example_4_3(*n, *p).map(|x| x.0)),
        }
    }
}

/// Coordinates of an element spec in `alg`.
pub fn element_of(
    alg: &FiniteAlgebra,
    e: &ElementSpec,
    pointer: &str,
) -> Result<Vec<Scalar>, SpecError> {
    let r = match e {
        ElementSpec::Label(l) => alg.element(&[(l.as_str(), 1)]),
        ElementSpec::Terms(terms) => terms_of(alg, terms),
    };
    build(pointer, r)
}

fn terms_of(alg: &FiniteAlgebra, terms: &[(TermKey, i64)]) -> eggert::Result<Vec<Scalar>> {
    let labels: Vec<(String, i64)> = terms.iter().map(|(k, c)| (k.label(), *c)).collect();
    let borrowed: Vec<(&str, i64)> = labels.iter().map(|(l, c)| (l.as_str(), *c)).collect();
    alg.element(&borrowed)
}

impl AlgebraSpec {
    pub fn build(&self) -> Result<FiniteAlgebra, SpecError> {
        self.build_at("")
    }

    fn build_at(&self, pointer: &str) -> Result<FiniteAlgebra, SpecError> {
        let sub = |name: &str| format!("{pointer}/{name}");
        match self {
            AlgebraSpec::Contracted { semigroup, p } => {
                let s = semigroup.build_at(&sub("semigroup"))?;
                Ok(contracted_algebra(&s, field(*p, pointer)?))
            }
            AlgebraSpec::TruncatedPoly {
                p,
                vars,
                degree,
                commutative,
            } => build(
                pointer,
                truncated_polynomial(field(*p, pointer)?, *vars, *degree, *commutative)
                    .map(|x| x.0),
            ),
            AlgebraSpec::Subalgebra { of, generators } => {
                let alg = of.build_at(&sub("of"))?;
                let gens = generators
                    .iter()
                    .enumerate()
                    .map(|(i, g)| element_of(&alg, g, &format!("{pointer}/generators/{i}")))
                    .collect::<Result<Vec<_>, _>>()?;
                build(pointer, subalgebra_generated(&alg, &gens).map(|x| x.0))
            }
            AlgebraSpec::Quotient { of, relators } => {
                let alg = of.build_at(&sub("of"))?;
                let rels = relators
                    .iter()
                    .enumerate()
                    .map(|(i, t)| build(&format!("{pointer}/relators/{i}"), terms_of(&alg, t)))
                    .collect::<Result<Vec<_>, _>>()?;
                let ideal = if rels.is_empty() {
                    Subspace::zero(alg.field(), alg.dim())
                } else {
                    build(pointer, ideal_generated(&alg, &rels))?
                };
                build(pointer, quotient(&alg, &ideal).map(|x| x.0))
            }
            AlgebraSpec::Tensor { left, right } => {
                let (l, r) = (left.build_at(&sub("left"))?, right.build_at(&sub("right"))?);
                build(pointer, tensor_product(&l, &r))
            }
            AlgebraSpec::DirectSum { left, right } => {
                let (l, r) = (left.build_at(&sub("left"))?, right.build_at(&sub("right"))?);
                build(pointer, direct_sum(&l, &r))
            }
            AlgebraSpec::ForbiddenWords { p, d, degree } => build(
                pointer,
                forbidden_word_algebra(field(*p, pointer)?, *d, *degree).map(|x| x.0),
            ),
            AlgebraSpec::Example24 { p, seed } => build(
                pointer,
                example_2_4_algebra(field(*p, pointer)?, *seed).map(|x| x.0),
            ),
        }
    }
}

/// Probe input: an algebra, a subspace given by spanning elements, and the
/// exponents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeSpec {
    pub algebra: AlgebraSpec,
    pub subspace: Vec<ElementSpec>,
    pub n: u64,
    pub m: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProbeFields {
    algebra: Value,
    subspace: Vec<ElementSpec>,
    n: u64,
    #[serde(default)]
    m: Option<u64>,
}

pub fn parse_probe(text: &str) -> Result<ProbeSpec, SpecError> {
    let v: Value = serde_json::from_str(text)?;
    if !v.is_object() {
        return Err(schema("", "expected an object"));
    }
    let f: ProbeFields = fields(&v, "")?;
    Ok(ProbeSpec {
        algebra: parse_algebra_value(&f.algebra, "/algebra")?,
        subspace: f.subspace,
        n: f.n,
        m: f.m,
    })
}

impl ProbeSpec {
    pub fn build(&self) -> Result<(FiniteAlgebra, Subspace), SpecError> {
        let alg = self.algebra.build_at("/algebra")?;
        let rows = self
            .subspace
            .iter()
            .enumerate()
            .map(|(i, e)| element_of(&alg, e, &format!("/subspace/{i}")))
            .collect::<Result<Vec<_>, _>>()?;
        let sub = build(
            "/subspace",
            Subspace::from_rows(alg.field(), alg.dim(), &rows),
        )?;
        Ok((alg, sub))
    }
}
