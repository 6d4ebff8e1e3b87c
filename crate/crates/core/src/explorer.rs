//! Deficit search over truncated numerical semigroups with imposed
//! relations, and the registry of named verifications.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebras::{
    contracted_algebra, direct_sum, example_2_4_algebra, example_2_4_base, forbidden_word_algebra,
    forbidden_word_dims, generated_in_degree_one, graded_components, ideal_generated, quotient,
    subalgebra_generated, tensor_product, truncate_above, truncated_polynomial, FiniteAlgebra,
    GradedView,
};
use crate::error::{Error, Result};
use crate::exactlin::{is_prime, PrimeField, Scalar, Subspace};
use crate::powermaps::{
    eggert_report, frobenius_matrix, identity_check_4_5, injectivity_check, power_dims_profile,
    power_image, root_section, root_section_within, set_injectivity_check, span_of_subset,
    DEFAULT_EXHAUSTIVE_CAP,
};
use crate::semigroups::{
    example_4_1, example_4_2, example_4_3, from_numerical, numerical_quotient, power_label,
    ElementSubset, NumericalPresentation, Relation, SemigroupWithZero, DEFAULT_BOUND_CAP,
};

/// Seed pinned for the relations of the graded four-generator example.
pub const EXAMPLE_2_4_SEED: u64 = 2012;

/// Seed of the random presentation suites.
pub const SUITE_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeTag {
    None,
    Identify,
    Collapse,
    IdentifyPair,
    Relator,
}

impl std::str::FromStr for SchemeTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(SchemeTag::None),
            "identify" => Ok(SchemeTag::Identify),
            "collapse" => Ok(SchemeTag::Collapse),
            "identify_pair" | "identify-pair" => Ok(SchemeTag::IdentifyPair),
            other => Err(Error::InvalidConfig(format!("unknown scheme {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorSets {
    Explicit(Vec<Vec<u64>>),
    /// All pairs `a < b <= max`, optionally only coprime ones.
    Pairs {
        max: u64,
        coprime_only: bool,
    },
}

impl GeneratorSets {
    pub fn expand(&self) -> Vec<Vec<u64>> {
        match self {
            GeneratorSets::Explicit(sets) => sets
                .iter()
                .map(|s| {
                    let set: BTreeSet<u64> = s.iter().copied().collect();
                    set.into_iter().collect()
                })
                .collect(),
            GeneratorSets::Pairs { max, coprime_only } => (1..=*max)
                .flat_map(|a| (a + 1..=*max).map(move |b| vec![a, b]))
                .filter(|g| !coprime_only || gcd(g[0], g[1]) == 1)
                .collect(),
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Algebra-level relators `sum_k c_k x^(i+k)` swept over `i`, over GF(p).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraRelators {
    pub p: u64,
    pub templates: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub generator_sets: GeneratorSets,
    pub bound_min: u64,
    pub bound_max: u64,
    pub exponent: u64,
    pub schemes: Vec<SchemeTag>,
    /// Enables two-relation sweeps, which are limited to `multi_bound_cap`.
    pub allow_multi: bool,
    pub multi_bound_cap: u64,
    pub algebra_relators: Option<AlgebraRelators>,
    pub bound_cap: u64,
    pub algebra_dim_cap: usize,
    pub max_candidates: usize,
    /// Compare each semigroup deficit with the contracted algebra's.
    pub cross_check: bool,
    pub seed: u64,
    pub top_k: Option<usize>,
    pub workers: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            generator_sets: GeneratorSets::Pairs {
                max: 7,
                coprime_only: true,
            },
            bound_min: 1,
            bound_max: 30,
            exponent: 2,
            schemes: vec![SchemeTag::None, SchemeTag::Identify, SchemeTag::Collapse],
            allow_multi: false,
            multi_bound_cap: 40,
            algebra_relators: None,
            bound_cap: DEFAULT_BOUND_CAP,
            algebra_dim_cap: 256,
            max_candidates: 1_000_000,
            cross_check: false,
            seed: 0,
            top_k: None,
            workers: 1,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidConfig(m.to_string()));
        if self.exponent < 2 {
            return bad("exponent must be at least 2");
        }
        if self.bound_min == 0 || self.bound_min > self.bound_max {
            return bad("bound range is empty");
        }
        if self.bound_max > self.bound_cap {
            return Err(Error::CapExceeded {
                what: "search bound",
                needed: self.bound_max as u128,
                cap: self.bound_cap as u128,
            });
        }
        if self.schemes.is_empty() && self.algebra_relators.is_none() {
            return bad("no schemes selected");
        }
        if self.schemes.contains(&SchemeTag::Relator) {
            return bad("relator sweeps are configured through algebra_relators");
        }
        if self.schemes.contains(&SchemeTag::IdentifyPair) && !self.allow_multi {
            return bad("identify_pair needs allow_multi");
        }
        if self.workers == 0 || self.algebra_dim_cap == 0 || self.max_candidates == 0 {
            return bad("workers and caps must be positive");
        }
        if self.top_k == Some(0) {
            return bad("top_k must be positive");
        }
        if self.generator_sets.expand().is_empty() {
            return bad("no generator sets");
        }
        if let Some(rel) = &self.algebra_relators {
            if !is_prime(rel.p) {
                return Err(Error::NotPrime(rel.p));
            }
            if rel.templates.iter().any(Vec::is_empty) {
                return bad("empty relator template");
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSubject {
    pub generators: Vec<u64>,
    pub bound: u64,
    pub p: u64,
    pub relator: Vec<i64>,
    pub at: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Subject {
    Semigroup {
        presentation: NumericalPresentation,
        card_s: Option<usize>,
        card_image: Option<usize>,
    },
    Algebra {
        algebra: AlgebraSubject,
        dim_r: Option<usize>,
        image_dim: Option<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub scheme: SchemeTag,
    pub params: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub p: u64,
    pub algebra_deficit: i64,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    #[serde(flatten)]
    pub subject: Subject,
    pub n: u64,
    pub deficit: Option<i64>,
    pub provenance: Provenance,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// Set for positive deficits: whether an independent route agrees.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reverified: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<CrossCheck>,
}

impl SearchRecord {
    fn key(&self) -> (&[u64], u64, SchemeTag, &[i64]) {
        let (gens, bound) = match &self.subject {
            Subject::Semigroup { presentation, .. } => {
                (presentation.generators.as_slice(), presentation.bound)
            }
            Subject::Algebra { algebra, .. } => (algebra.generators.as_slice(), algebra.bound),
        };
        (gens, bound, self.provenance.scheme, &self.provenance.params)
    }

    /// Positive deficit that an independent route confirmed.
    pub fn is_anomaly(&self) -> bool {
        self.deficit.is_some_and(|d| d > 0) && self.reverified == Some(true)
    }
}

/// Deficit descending with skipped records last, then the candidate key.
pub fn record_order(a: &SearchRecord, b: &SearchRecord) -> Ordering {
    match (a.deficit, b.deficit) {
        (Some(x), Some(y)) => y.cmp(&x),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => Ordering::Equal,
    }
    .then_with(|| a.key().cmp(&b.key()))
}

#[derive(Debug, Clone)]
enum Candidate {
    Semigroup {
        presentation: NumericalPresentation,
        provenance: Provenance,
    },
    Algebra(AlgebraSubject),
}

fn candidates(cfg: &SearchConfig) -> Result<Vec<Candidate>> {
    let mut out = Vec::new();
    let push = |out: &mut Vec<Candidate>, c: Candidate| -> Result<()> {
        out.push(c);
        if out.len() > cfg.max_candidates {
            return Err(Error::CapExceeded {
                what: "search candidates",
                needed: out.len() as u128,
                cap: cfg.max_candidates as u128,
            });
        }
        Ok(())
    };
    for gens in cfg.generator_sets.expand() {
        for bound in cfg.bound_min..=cfg.bound_max {
            let base = NumericalPresentation::new(gens.clone(), bound);
            let members = base.members();
            let member: BTreeSet<u64> = members.iter().copied().collect();
            let identify_at: Vec<u64> = members
                .iter()
                .copied()
                .filter(|i| member.contains(&(i + 1)))
                .collect();
            let semigroup =
                |rels: Vec<Relation>, scheme: SchemeTag, params: Vec<i64>| Candidate::Semigroup {
                    presentation: NumericalPresentation {
                        generators: gens.clone(),
                        bound,
                        relations: rels,
                    },
                    provenance: Provenance { scheme, params },
                };
            for &scheme in &cfg.schemes {
                match scheme {
                    SchemeTag::None => push(&mut out, semigroup(vec![], scheme, vec![]))?,
                    SchemeTag::Identify => {
                        for &i in &identify_at {
                            let c = semigroup(
                                vec![Relation::Identify(i, i + 1)],
                                scheme,
                                vec![i as i64, i as i64 + 1],
                            );
                            push(&mut out, c)?;
                        }
                    }
                    SchemeTag::Collapse => {
                        for &a in &members {
                            push(
                                &mut out,
                                semigroup(
                                    vec![Relation::CollapseToZero(a)],
                                    scheme,
                                    vec![a as i64],
                                ),
                            )?;
                        }
                    }
                    SchemeTag::IdentifyPair => {
                        if bound > cfg.multi_bound_cap {
                            continue;
                        }
                        for (x, &i) in identify_at.iter().enumerate() {
                            for &j in &identify_at[x + 1..] {
                                let rels = vec![
                                    Relation::Identify(i, i + 1),
                                    Relation::Identify(j, j + 1),
                                ];
                                let params = vec![i as i64, i as i64 + 1, j as i64, j as i64 + 1];
                                push(&mut out, semigroup(rels, scheme, params))?;
                            }
                        }
                    }
                    SchemeTag::Relator => {}
                }
            }
            if let Some(rel) = &cfg.algebra_relators {
                for template in &rel.templates {
                    for &at in &members {
                        let fits = (0..template.len() as u64)
                            .all(|k| at + k > bound || member.contains(&(at + k)));
                        if fits {
                            let subject = AlgebraSubject {
                                generators: gens.clone(),
                                bound,
                                p: rel.p,
                                relator: template.clone(),
                                at,
                            };
                            push(&mut out, Candidate::Algebra(subject))?;
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Semigroup deficit computed from the integers in each class rather than
/// from the multiplication table.
fn integer_route_deficit(pres: &NumericalPresentation, n: u64, cap: u64) -> Result<i64> {
    let q = numerical_quotient(pres, cap)?;
    let mut class_of = vec![0usize; pres.bound as usize + 1];
    for (e, class) in q.classes.iter().enumerate() {
        for &m in class {
            class_of[m as usize] = e;
        }
    }
    let mut image = BTreeSet::new();
    for class in &q.classes[1..] {
        for &m in class {
            let target = m * n;
            if target <= pres.bound && class_of[target as usize] != 0 {
                image.insert(class_of[target as usize]);
            }
        }
    }
    Ok(n as i64 * image.len() as i64 - (q.classes.len() as i64 - 1))
}

/// Deficit of the contracted algebra over GF(p) with exponent p.
fn algebra_deficit(s: &SemigroupWithZero, p: u64) -> Result<i64> {
    let field = PrimeField::new(p)?;
    Ok(eggert_report(&contracted_algebra(s, field), p)?.deficit)
}

/// Builds the relator quotient algebra and the relator itself.
fn relator_algebra(subject: &AlgebraSubject) -> Result<FiniteAlgebra> {
    let field = PrimeField::new(subject.p)?;
    let s = from_numerical(&NumericalPresentation::new(
        subject.generators.clone(),
        subject.bound,
    ))?;
    let alg = contracted_algebra(&s, field);
    relator_quotient(&alg, subject)
}

fn relator_quotient(alg: &FiniteAlgebra, subject: &AlgebraSubject) -> Result<FiniteAlgebra> {
    let mut rel = alg.zero();
    for (k, &c) in subject.relator.iter().enumerate() {
        let e = subject.at + k as u64;
        if e > subject.bound {
            continue;
        }
        let label = power_label("x", e);
        let i = alg.find_label(&label).ok_or(Error::UnknownLabel(label))?;
        rel[i] = alg.field().add(rel[i], alg.field().from_i64(c));
    }
    let ideal = ideal_generated(alg, &[rel])?;
    Ok(quotient(alg, &ideal)?.0)
}

/// The relator quotient rebuilt inside the truncated polynomial algebra.
fn relator_algebra_via_polynomials(subject: &AlgebraSubject) -> Result<FiniteAlgebra> {
    let field = PrimeField::new(subject.p)?;
    let (poly, _) = truncated_polynomial(field, 1, subject.bound as usize, true)?;
    let gens: Vec<Vec<Scalar>> = subject
        .generators
        .iter()
        .filter(|&&g| g <= subject.bound)
        .map(|&g| poly.basis_vector(g as usize - 1))
        .collect();
    let (sub, _) = subalgebra_generated(&poly, &gens)?;
    relator_quotient(&sub, subject)
}

fn skipped(subject: Subject, n: u64, provenance: Provenance, e: Error) -> SearchRecord {
    SearchRecord {
        subject,
        n,
        deficit: None,
        provenance,
        status: Status::Skipped,
        reason: Some(e.to_string()),
        reverified: None,
        cross_check: None,
    }
}

fn evaluate(cfg: &SearchConfig, c: &Candidate) -> SearchRecord {
    let n = cfg.exponent;
    match c {
        Candidate::Semigroup {
            presentation,
            provenance,
        } => {
            let built = numerical_quotient(presentation, cfg.bound_cap);
            let q = match built {
                Ok(q) => q,
                Err(e) => {
                    let subject = Subject::Semigroup {
                        presentation: presentation.clone(),
                        card_s: None,
                        card_image: None,
                    };
                    return skipped(subject, n, provenance.clone(), e);
                }
            };
            let s = &q.semigroup;
            let card_s = s.card_nonzero();
            let card_image = s.whole().power_subset(n).card_nonzero();
            let deficit = n as i64 * card_image as i64 - card_s as i64;
            let prime_exponent = is_prime(n) && card_s <= cfg.algebra_dim_cap;
            let cross_check = (cfg.cross_check && prime_exponent).then(|| {
                let algebra_deficit =
                    algebra_deficit(s, n).expect("contracted algebras are commutative");
                CrossCheck {
                    p: n,
                    algebra_deficit,
                    agrees: algebra_deficit == deficit,
                }
            });
            let reverified = (deficit > 0).then(|| {
                let integer =
                    integer_route_deficit(presentation, n, cfg.bound_cap).ok() == Some(deficit);
                let algebra = !prime_exponent || algebra_deficit(s, n).ok() == Some(deficit);
                integer && algebra
            });
            SearchRecord {
                subject: Subject::Semigroup {
                    presentation: presentation.clone(),
                    card_s: Some(card_s),
                    card_image: Some(card_image),
                },
                n,
                deficit: Some(deficit),
                provenance: provenance.clone(),
                status: Status::Ok,
                reason: None,
                reverified,
                cross_check,
            }
        }
        Candidate::Algebra(subject) => {
            let mut params = vec![subject.p as i64, subject.at as i64];
            params.extend(&subject.relator);
            let provenance = Provenance {
                scheme: SchemeTag::Relator,
                params,
            };
            let empty = Subject::Algebra {
                algebra: subject.clone(),
                dim_r: None,
                image_dim: None,
            };
            let members = NumericalPresentation::new(subject.generators.clone(), subject.bound)
                .members()
                .len();
            if members > cfg.algebra_dim_cap {
                let e = Error::CapExceeded {
                    what: "algebra dimension",
                    needed: members as u128,
                    cap: cfg.algebra_dim_cap as u128,
                };
                return skipped(empty, n, provenance, e);
            }
            let report = relator_algebra(subject).and_then(|q| eggert_report(&q, n));
            let report = match report {
                Ok(r) => r,
                Err(e) => return skipped(empty, n, provenance, e),
            };
            let reverified = (report.deficit > 0).then(|| {
                relator_algebra_via_polynomials(subject)
                    .and_then(|q| eggert_report(&q, n))
                    .map(|r| r.deficit == report.deficit)
                    .unwrap_or(false)
            });
            SearchRecord {
                subject: Subject::Algebra {
                    algebra: subject.clone(),
                    dim_r: Some(report.dim_r),
                    image_dim: Some(report.image_dim),
                },
                n,
                deficit: Some(report.deficit),
                provenance,
                status: Status::Ok,
                reason: None,
                reverified,
                cross_check: None,
            }
        }
    }
}

/// Evaluates every candidate of the sweep and returns the records sorted by
/// [`record_order`]. The result does not depend on `cfg.workers`.
pub fn run_search(cfg: &SearchConfig) -> Result<Vec<SearchRecord>> {
    cfg.validate()?;
    let cands = candidates(cfg)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::InvalidConfig(e.to_string()))?;
    let mut records: Vec<SearchRecord> =
        pool.install(|| cands.par_iter().map(|c| evaluate(cfg, c)).collect());
    records.sort_by(record_order);
    Ok(records)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub total: usize,
    pub evaluated: usize,
    pub skipped: usize,
    pub max_deficit: Option<i64>,
    pub zero_deficit: usize,
    pub positive: usize,
    pub anomalies: usize,
    pub cross_check_failures: usize,
}

pub fn summarize(records: &[SearchRecord]) -> SearchSummary {
    let evaluated = records.iter().filter(|r| r.status == Status::Ok).count();
    SearchSummary {
        total: records.len(),
        evaluated,
        skipped: records.len() - evaluated,
        max_deficit: records.iter().filter_map(|r| r.deficit).max(),
        zero_deficit: records.iter().filter(|r| r.deficit == Some(0)).count(),
        positive: records
            .iter()
            .filter(|r| r.deficit.is_some_and(|d| d > 0))
            .count(),
        anomalies: records.iter().filter(|r| r.is_anomaly()).count(),
        cross_check_failures: records
            .iter()
            .filter(|r| r.cross_check.as_ref().is_some_and(|c| !c.agrees))
            .count(),
    }
}

/// The first `k` records of a sorted list with statistics over all of them.
pub fn best_records(records: &[SearchRecord], k: usize) -> (&[SearchRecord], SearchSummary) {
    (&records[..k.min(records.len())], summarize(records))
}

/// Seeded presentations on two generators `a < b <= max_generator` with a
/// bound in `b..=max_bound` and at most one random relation.
pub fn random_presentations(
    seed: u64,
    count: usize,
    max_generator: u64,
    max_bound: u64,
) -> Vec<NumericalPresentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let a = rng.gen_range(1..max_generator);
            let b = rng.gen_range(a + 1..=max_generator);
            let bound = rng.gen_range(b..=max_bound.max(b));
            let pres = NumericalPresentation::new(vec![a, b], bound);
            let members = pres.members();
            let member: BTreeSet<u64> = members.iter().copied().collect();
            match rng.gen_range(0..3) {
                1 => {
                    let i = members[rng.gen_range(0..members.len())];
                    if member.contains(&(i + 1)) {
                        pres.with_relation(Relation::Identify(i, i + 1))
                    } else {
                        let j = members[rng.gen_range(0..members.len())];
                        pres.with_relation(Relation::Identify(i.min(j), i.max(j)))
                    }
                }
                2 => {
                    let i = members[rng.gen_range(0..members.len())];
                    pres.with_relation(Relation::CollapseToZero(i))
                }
                _ => pres,
            }
        })
        .collect()
}

/// The seeded presentations of the root-section suite.
pub fn root_section_presentations() -> Vec<NumericalPresentation> {
    random_presentations(SUITE_SEED, 50, 9, 40)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: impl ToString, computed: impl ToString) -> Self {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        Self {
            name: name.into(),
            passed: expected == computed,
            expected,
            computed,
        }
    }

    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Self::new(name, true, ok)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub id: String,
    pub title: String,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub passed: bool,
}

/// A registered verification: id, title, constructor-and-comparison, and an
/// optional note printed with the result.
pub struct KnownEntry {
    pub id: &'static str,
    pub title: &'static str,
    pub run: fn() -> Result<Vec<Check>>,
    pub note: Option<&'static str>,
}

pub const REGISTRY: &[KnownEntry] = &[
    KnownEntry {
        id: "truncated-ratio",
        title: "[GF(p)][x]/(x^(N+1)), N = pk + r: image dim k, deficit -r, p in {2,3,5}",
        run: run_truncated_ratio,
        note: None,
    },
    KnownEntry {
        id: "5.4",
        title: "[F][x^2,x^3]/(x^(N-1) - x^N, x^(>N)) over GF(2), even N in 4..=20",
        run: run_two_three_identify,
        note: None,
    },
    KnownEntry {
        id: "5.5",
        title: "[F][x^2,x^3]/(x^(N-1), x^(>N)) over GF(2), even N in 4..=20",
        run: run_two_three_collapse,
        note: None,
    },
    KnownEntry {
        id: "5.6",
        title: "[F][x^4,x^5]/(x^13 - x^14, x^(>24)) over GF(2)",
        run: run_four_five,
        note: Some(
            "stated dims 18 and 9 differ from the computed 12 and 6; 18 is the size \
             before x^13 = x^14 is imposed. The deficit is 0 either way.",
        ),
    },
    KnownEntry {
        id: "5.7a",
        title: "[F][x^2,x^5]/(x^11 - x^12, x^(>14)) over GF(2)",
        run: run_two_five,
        note: None,
    },
    KnownEntry {
        id: "5.7b",
        title: "[F][x^3,x^7]/(x^13 - x^14, x^(>24)) over GF(2)",
        run: run_three_seven,
        note: None,
    },
    KnownEntry {
        id: "deficit-ledger",
        title: "deficits -n+1, -n+2 and 6(-n+1) of the truncated (2,3) and (4,5) semigroups",
        run: run_deficit_ledger,
        note: None,
    },
    KnownEntry {
        id: "2.3",
        title: "forbidden-word algebra: dims 2d in odd and d^2+1 in even degrees",
        run: run_forbidden_words,
        note: None,
    },
    KnownEntry {
        id: "2.4",
        title: "graded algebra with components 4,3,4,3 and the char-3 truncation",
        run: run_graded_four,
        note: None,
    },
    KnownEntry {
        id: "4.1",
        title: "{x,..,x^5,0} x cyclic group of order i, i in 2..=4",
        run: run_nil_times_group,
        note: None,
    },
    KnownEntry {
        id: "4.2",
        title: "x, y, z_1..z_(p-1) with z_k annihilating, p = 5",
        run: run_x_y_z,
        note: None,
    },
    KnownEntry {
        id: "4.3",
        title: "n-th power injective on X but not on its span",
        run: run_span_kernel,
        note: None,
    },
    KnownEntry {
        id: "lemma2.1-suite",
        title: "dim V^i >= dim V for root sections of 50 random presentations",
        run: run_root_section_suite,
        note: None,
    },
    KnownEntry {
        id: "corollary2.2-suite",
        title: "graded algebras generated in degree 1 with (R_2)^(p) = 0",
        run: run_graded_suite,
        note: None,
    },
    KnownEntry {
        id: "identity4.5",
        title: "alternating subset-sum identity for (n,p) in (2,3),(3,5),(4,7),(5,11)",
        run: run_identity,
        note: None,
    },
    KnownEntry {
        id: "tensor1.4",
        title: "image dims multiply under tensor products and add under direct sums",
        run: run_tensor,
        note: None,
    },
    KnownEntry {
        id: "bridge3.3",
        title: "semigroup deficit equals contracted-algebra deficit, p in {2,3}",
        run: run_bridge,
        note: None,
    },
];

pub fn registry_ids() -> Vec<&'static str> {
    REGISTRY.iter().map(|e| e.id).collect()
}

pub fn verify_known(id: &str) -> Result<Verification> {
    let entry = REGISTRY
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownExample(id.to_string()))?;
    let checks = (entry.run)()?;
    Ok(Verification {
        id: entry.id.to_string(),
        title: entry.title.to_string(),
        passed: checks.iter().all(|c| c.passed),
        checks,
        note: entry.note.map(str::to_string),
    })
}

/// `(dim, image_dim, deficit)` of a presentation by the semigroup table and
/// by the quotient of `[F][x]` truncated above the bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteDims {
    pub dim: usize,
    pub image_dim: usize,
    pub deficit: i64,
}

impl std::fmt::Display for RouteDims {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "dim {} image {} deficit {}",
            self.dim, self.image_dim, self.deficit
        )
    }
}

pub fn semigroup_route(pres: &NumericalPresentation, n: u64) -> Result<RouteDims> {
    let s = from_numerical(pres)?;
    let image_dim = s.whole().power_subset(n).card_nonzero();
    Ok(RouteDims {
        dim: s.card_nonzero(),
        image_dim,
        deficit: s.deficit(n),
    })
}

/// Subalgebra of `[GF(p)][x]/(x^(N+1))` on the generators, divided by the
/// ideal of the relations (`x^a - x^b`, or `x^a`).
pub fn algebra_route(pres: &NumericalPresentation, p: u64) -> Result<RouteDims> {
    pres.validate(DEFAULT_BOUND_CAP)?;
    let field = PrimeField::new(p)?;
    let (poly, _) = truncated_polynomial(field, 1, pres.bound as usize, true)?;
    let gens: Vec<Vec<Scalar>> = pres
        .generators
        .iter()
        .filter(|&&g| g <= pres.bound)
        .map(|&g| poly.basis_vector(g as usize - 1))
        .collect();
    let (sub, _) = subalgebra_generated(&poly, &gens)?;
    let rels = pres
        .relations
        .iter()
        .map(|r| match *r {
            Relation::Identify(a, b) => {
                sub.element(&[(&power_label("x", a), 1), (&power_label("x", b), -1)])
            }
            Relation::CollapseToZero(a) => sub.element(&[(&power_label("x", a), 1)]),
        })
        .collect::<Result<Vec<_>>>()?;
    let ideal = if rels.is_empty() {
        Subspace::zero(field, sub.dim())
    } else {
        ideal_generated(&sub, &rels)?
    };
    let (q, _) = quotient(&sub, &ideal)?;
    let rep = eggert_report(&q, p)?;
    Ok(RouteDims {
        dim: rep.dim_r,
        image_dim: rep.image_dim,
        deficit: rep.deficit,
    })
}

/// Checks both routes of a presentation against expected dims over GF(2).
fn named_presentation(
    label: &str,
    pres: &NumericalPresentation,
    dim: usize,
    image: usize,
) -> Result<Vec<Check>> {
    let expected = RouteDims {
        dim,
        image_dim: image,
        deficit: 2 * image as i64 - dim as i64,
    };
    Ok(vec![
        Check::new(
            format!("{label} semigroup"),
            expected,
            semigroup_route(pres, 2)?,
        ),
        Check::new(
            format!("{label} algebra"),
            expected,
            algebra_route(pres, 2)?,
        ),
    ])
}

fn two_three(bound: u64, rel: Relation) -> NumericalPresentation {
    NumericalPresentation::new([2, 3], bound).with_relation(rel)
}

pub fn four_five_presentation() -> NumericalPresentation {
    NumericalPresentation::new([4, 5], 24).with_relation(Relation::Identify(13, 14))
}

pub fn two_five_presentation() -> NumericalPresentation {
    NumericalPresentation::new([2, 5], 14).with_relation(Relation::Identify(11, 12))
}

pub fn three_seven_presentation() -> NumericalPresentation {
    NumericalPresentation::new([3, 7], 24).with_relation(Relation::Identify(13, 14))
}

fn run_two_three_identify() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for n in (4..=20u64).step_by(2) {
        let pres = two_three(n, Relation::Identify(n - 1, n));
        let d = n as usize - 2;
        checks.extend(named_presentation(&format!("N={n}"), &pres, d, d / 2)?);
    }
    Ok(checks)
}

fn run_two_three_collapse() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for n in (4..=20u64).step_by(2) {
        let pres = two_three(n, Relation::CollapseToZero(n - 1));
        let d = n as usize - 2;
        checks.extend(named_presentation(&format!("N={n}"), &pres, d, d / 2)?);
    }
    Ok(checks)
}

fn run_four_five() -> Result<Vec<Check>> {
    let pres = four_five_presentation();
    let semi = semigroup_route(&pres, 2)?;
    let alg = algebra_route(&pres, 2)?;
    let q = numerical_quotient(&pres, DEFAULT_BOUND_CAP)?;
    let merged: Vec<Vec<u64>> = q.classes[1..]
        .iter()
        .filter(|c| c.len() > 1)
        .cloned()
        .collect();
    Ok(vec![
        Check::new("deficit (semigroup)", 0, semi.deficit),
        Check::new("deficit (algebra)", 0, alg.deficit),
        Check::holds("image/dim = 1/2", 2 * alg.image_dim == alg.dim),
        Check::new("routes agree", semi, alg),
        Check::new(
            "computed dims",
            "12/6",
            format!("{}/{}", alg.dim, alg.image_dim),
        ),
        Check::new(
            "merged classes",
            "[[13, 14], [17, 18, 19], [21, 22, 23, 24]]",
            format!("{merged:?}"),
        ),
        Check::new(
            "size before the relation",
            18,
            from_numerical(&NumericalPresentation::new([4, 5], 24))?.card_nonzero(),
        ),
    ])
}

fn run_two_five() -> Result<Vec<Check>> {
    named_presentation("(2,5)", &two_five_presentation(), 10, 5)
}

fn run_three_seven() -> Result<Vec<Check>> {
    named_presentation("(3,7)", &three_seven_presentation(), 12, 6)
}

fn run_forbidden_words() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for d in 1..=3usize {
        let dims = forbidden_word_dims(d, 9)?;
        checks.push(Check::new(format!("d={d} degree 1"), d + 1, dims[0]));
        for deg in 3..=9usize {
            let expected = if deg % 2 == 1 { 2 * d } else { d * d + 1 };
            checks.push(Check::new(
                format!("d={d} degree {deg}"),
                expected,
                dims[deg - 1],
            ));
        }
    }
    let (alg, view) = forbidden_word_algebra(PrimeField::new(2)?, 2, 6)?;
    let comps: Vec<usize> = graded_components(&alg, &view)
        .iter()
        .map(|c| c.dim)
        .collect();
    checks.push(Check::new(
        "d=2 algebra components",
        format!("{:?}", forbidden_word_dims(2, 6)?),
        format!("{comps:?}"),
    ));
    Ok(checks)
}

fn component_dims(view: &GradedView) -> String {
    format!("{:?}", view.component_dims())
}

fn run_graded_four() -> Result<Vec<Check>> {
    let gf5 = PrimeField::new(5)?;
    let (_, base) = example_2_4_base(gf5)?;
    let (alg, view) = example_2_4_algebra(gf5, EXAMPLE_2_4_SEED)?;
    let gf3 = PrimeField::new(3)?;
    let (r3, v3) = example_2_4_algebra(gf3, EXAMPLE_2_4_SEED)?;
    let (t, tv) = truncate_above(&r3, &v3, 3)?;
    let r1 = Subspace::coordinate(gf3, t.dim(), &tv.indices_of_degree(1));
    let frob = frobenius_matrix(&t, 1)?;
    let images = r1
        .basis_vectors()
        .map(|b| frob.mul_vec(b))
        .collect::<Result<Vec<_>>>()?;
    let cube_image = Subspace::from_rows(gf3, t.dim(), &images)?;
    let expected_image = Subspace::from_rows(
        gf3,
        t.dim(),
        &[t.element(&[("x^3", 1)])?, t.element(&[("y^3", 1)])?],
    )?;
    let r3_dim = tv.indices_of_degree(3).len();
    Ok(vec![
        Check::new("before relations", "[4, 3, 4, 5]", component_dims(&base)),
        Check::new("GF(5) components", "[4, 3, 4, 3]", component_dims(&view)),
        Check::holds(
            "GF(5) generated in degree 1",
            generated_in_degree_one(&alg, &view)?,
        ),
        Check::new(
            "GF(3) truncated components",
            "[4, 3, 4]",
            component_dims(&tv),
        ),
        Check::new("GF(3) cube image of R_1", 2, cube_image.dim()),
        Check::holds("cube image is span{x^3, y^3}", cube_image == expected_image),
        Check::holds("cube image proper in R_3", cube_image.dim() < r3_dim),
    ])
}

fn run_nil_times_group() -> Result<Vec<Check>> {
    let p = 5;
    let mut checks = Vec::new();
    for i in 2..=4usize {
        let (s, x) = example_4_1(p, i)?;
        let x = ElementSubset::new(&s, x)?;
        checks.push(Check::new(
            format!("i={i} card X^(5)"),
            i,
            x.power_subset(p as u64).card_nonzero(),
        ));
        checks.push(Check::new(
            format!("i={i} card X^(i)"),
            1,
            x.power_subset(i as u64).card_nonzero(),
        ));
        checks.push(Check::holds(
            format!("i={i} 5th power bijective on X"),
            set_injectivity_check(&x, p as u64),
        ));
    }
    Ok(checks)
}

fn run_x_y_z() -> Result<Vec<Check>> {
    let p = 5;
    let (s, x) = example_4_2(p, p)?;
    let x = ElementSubset::new(&s, x)?;
    let mut checks = vec![Check::new("card X", p + 1, x.card_nonzero())];
    for i in 2..=p {
        checks.push(Check::new(
            format!("card X^{i}"),
            i + 1,
            x.product_subset(i).card_nonzero(),
        ));
    }
    checks.push(Check::holds("nilpotent", s.nilpotency_index().is_some()));
    Ok(checks)
}

fn run_span_kernel() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (n, p) in [(3usize, 2u64), (7, 5)] {
        let (s, x) = example_4_3(n, p as usize)?;
        let field = PrimeField::new(p)?;
        let r = contracted_algebra(&s, field);
        let v = r.element(&[("x", 1), ("xy", -1)])?;
        let frob = frobenius_matrix(&r, 1)?;
        let xs = ElementSubset::new(&s, x)?;
        let span = span_of_subset(field, &xs);
        let tag = format!("n={n} p={p}");
        checks.push(Check::holds(
            format!("{tag} Frobenius kills x - xy"),
            frob.mul_vec(&v)?.iter().all(|&c| c == 0),
        ));
        checks.push(Check::holds(
            format!("{tag} (x - xy)^n = 0"),
            r.pow(&v, n as u64).iter().all(|&c| c == 0),
        ));
        checks.push(Check::holds(
            format!("{tag} injective on X"),
            set_injectivity_check(&xs, n as u64),
        ));
        checks.push(Check::holds(
            format!("{tag} not injective on span X"),
            !injectivity_check(&r, &span, n as u64, DEFAULT_EXHAUSTIVE_CAP)?,
        ));
    }
    Ok(checks)
}

/// Root-section profile check for one algebra: `(hypothesis, dims ok)`.
pub fn root_section_profile(r: &FiniteAlgebra, p: u64) -> Result<(bool, Vec<usize>, usize)> {
    let w = root_section(r)?;
    let hyp = injectivity_check(r, &w.v, p, DEFAULT_EXHAUSTIVE_CAP)?;
    let profile = power_dims_profile(r, &w.v, p as usize);
    Ok((hyp, profile, w.v.dim()))
}

fn run_root_section_suite() -> Result<Vec<Check>> {
    let pres = root_section_presentations();
    let mut checks = Vec::new();
    for p in [2u64, 3] {
        let field = PrimeField::new(p)?;
        let mut good = 0;
        for pr in &pres {
            let r = contracted_algebra(&from_numerical(pr)?, field);
            let (hyp, profile, d) = root_section_profile(&r, p)?;
            if hyp && profile.iter().all(|&x| x >= d) {
                good += 1;
            }
        }
        checks.push(Check::new(
            format!("GF({p}) cases holding"),
            pres.len(),
            good,
        ));
    }
    Ok(checks)
}

/// Graded algebras used by the graded suite, with their characteristic.
fn graded_suite_algebras() -> Result<Vec<(String, FiniteAlgebra, GradedView)>> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5] {
        let field = PrimeField::new(p)?;
        for vars in 1..=3usize {
            for degree in 1..2 * p as usize {
                if let Ok((a, v)) = truncated_polynomial(field, vars, degree.min(6), true) {
                    out.push((
                        format!("GF({p}) vars={vars} degree={}", degree.min(6)),
                        a,
                        v,
                    ));
                }
            }
        }
    }
    for p in [3u64, 5] {
        let field = PrimeField::new(p)?;
        let (a, v) = example_2_4_algebra(field, EXAMPLE_2_4_SEED)?;
        out.push((format!("GF({p}) graded 4,3,4,3"), a, v));
        let (a, v) = example_2_4_base(field)?;
        out.push((format!("GF({p}) graded 4,3,4,5"), a, v));
    }
    out.dedup_by(|x, y| x.0 == y.0);
    Ok(out)
}

fn run_graded_suite() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (name, r, view) in graded_suite_algebras()? {
        let p = r.characteristic();
        let comps = graded_components(&r, &view);
        let r2 = comps
            .get(1)
            .map(|c| c.basis.clone())
            .unwrap_or_else(|| Subspace::zero(r.field(), r.dim()));
        let r2_image = root_section_within(&r, &r2)?.image;
        if !generated_in_degree_one(&r, &view)? || !r2_image.is_zero() {
            continue;
        }
        let d = power_image(&r, p)?.span.dim();
        let w = root_section_within(&r, &comps[0].basis)?;
        let profile = power_dims_profile(&r, &w.v, p as usize);
        let components_ok = (0..p as usize).all(|i| comps.get(i).map_or(0, |c| c.dim) >= d);
        let ok = w.v.dim() == d
            && components_ok
            && profile.iter().all(|&x| x >= d)
            && profile.iter().sum::<usize>() <= r.dim()
            && r.dim() as i64 >= p as i64 * d as i64;
        checks.push(Check::holds(name, ok));
    }
    Ok(checks)
}

fn run_truncated_ratio() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5] {
        let field = PrimeField::new(p)?;
        for k in 0..=6u64 {
            for r in 0..p {
                let big_n = p * k + r;
                if big_n == 0 {
                    continue;
                }
                let (alg, _) = truncated_polynomial(field, 1, big_n as usize, true)?;
                let rep = eggert_report(&alg, p)?;
                out.push(Check::new(
                    format!("p={p} N={big_n} image"),
                    k,
                    rep.image_dim,
                ));
                out.push(Check::new(
                    format!("p={p} N={big_n} deficit"),
                    -(r as i64),
                    rep.deficit,
                ));
            }
        }
    }
    Ok(out)
}

fn run_deficit_ledger() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    // The bound is a multiple of n throughout.
    for n in [2u64, 3, 5] {
        let big_n = 6 * n;
        let plain = from_numerical(&NumericalPresentation::new(vec![2, 3], big_n))?;
        out.push(Check::new(
            format!("(2,3) N={big_n} n={n}"),
            1 - n as i64,
            plain.deficit(n),
        ));
        for rel in [
            Relation::CollapseToZero(big_n - 1),
            Relation::Identify(big_n - 1, big_n),
        ] {
            let s = from_numerical(&two_three(big_n, rel))?;
            out.push(Check::new(
                format!("(2,3) N={big_n} {rel:?} n={n}"),
                2 - n as i64,
                s.deficit(n),
            ));
        }
    }
    for n in [2u64, 3] {
        for bound in [11 * n, 22 * n] {
            let s = from_numerical(&NumericalPresentation::new(vec![4, 5], bound))?;
            out.push(Check::new(
                format!("(4,5) N={bound} n={n}"),
                6 * (1 - n as i64),
                s.deficit(n),
            ));
        }
    }
    Ok(out)
}

fn run_identity() -> Result<Vec<Check>> {
    [(2usize, 3u64), (3, 5), (4, 7), (5, 11)]
        .into_iter()
        .map(|(n, p)| {
            let c = identity_check_4_5(PrimeField::new(p)?, n)?;
            Ok(Check::holds(format!("n={n} p={p}"), c.holds))
        })
        .collect()
}

fn run_tensor() -> Result<Vec<Check>> {
    let gf2 = PrimeField::new(2)?;
    let (r, _) = truncated_polynomial(gf2, 1, 4, true)?;
    let single = eggert_report(&r, 2)?;
    let t = eggert_report(&tensor_product(&r, &r)?, 2)?;
    let (s, _) = truncated_polynomial(gf2, 1, 6, true)?;
    let sum = eggert_report(&direct_sum(&r, &s)?, 2)?;
    Ok(vec![
        Check::new("dim R (x) S", 16, t.dim_r),
        Check::new(
            "image of R (x) S",
            single.image_dim * single.image_dim,
            t.image_dim,
        ),
        Check::new("image of R (x) S", 4, t.image_dim),
        Check::new(
            "deficit of a direct sum of deficit-0 algebras",
            0,
            sum.deficit,
        ),
    ])
}

/// Every semigroup built by the verification registry and suites.
pub fn suite_semigroups() -> Result<Vec<(String, SemigroupWithZero)>> {
    let mut out = Vec::new();
    for n in 1..=12usize {
        out.push((
            format!("cyclic {n}"),
            SemigroupWithZero::cyclic_truncated(n)?,
        ));
    }
    for n in (4..=20u64).step_by(2) {
        out.push((
            format!("(2,3) N={n} identify"),
            from_numerical(&two_three(n, Relation::Identify(n - 1, n)))?,
        ));
        out.push((
            format!("(2,3) N={n} collapse"),
            from_numerical(&two_three(n, Relation::CollapseToZero(n - 1)))?,
        ));
    }
    for pres in [
        four_five_presentation(),
        two_five_presentation(),
        three_seven_presentation(),
    ] {
        out.push((format!("{pres:?}"), from_numerical(&pres)?));
    }
    for n in [2u64, 3, 5] {
        out.push((
            format!("(2,3) N={}", 6 * n),
            from_numerical(&NumericalPresentation::new([2, 3], 6 * n))?,
        ));
        out.push((
            format!("(2,3) N={} collapse", 6 * n),
            from_numerical(&two_three(6 * n, Relation::CollapseToZero(6 * n - 1)))?,
        ));
        out.push((
            format!("(2,3) N={} identify", 6 * n),
            from_numerical(&two_three(6 * n, Relation::Identify(6 * n - 1, 6 * n)))?,
        ));
    }
    for n in [2u64, 3] {
        for bound in [11 * n, 22 * n] {
            out.push((
                format!("(4,5) N={bound}"),
                from_numerical(&NumericalPresentation::new([4, 5], bound))?,
            ));
        }
    }
    for i in 2..=4 {
        out.push((format!("nil x C{i}"), example_4_1(5, i)?.0));
    }
    out.push(("x,y,z".into(), example_4_2(5, 5)?.0));
    out.push(("nil3 x C2".into(), example_4_3(3, 2)?.0));
    out.push(("nil7 x C5".into(), example_4_3(7, 5)?.0));
    for (k, pres) in root_section_presentations().iter().enumerate() {
        out.push((format!("random {k}"), from_numerical(pres)?));
    }
    Ok(out)
}

fn run_bridge() -> Result<Vec<Check>> {
    let semigroups = suite_semigroups()?;
    let mut checks = Vec::new();
    for p in [2u64, 3] {
        let mut agree = 0;
        for (_, s) in &semigroups {
            if algebra_deficit(s, p)? == s.deficit(p) {
                agree += 1;
            }
        }
        checks.push(Check::new(
            format!("p={p} agreeing"),
            semigroups.len(),
            agree,
        ));
    }
    Ok(checks)
}
