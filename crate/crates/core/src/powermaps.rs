//! Frobenius and general `n`-th power maps on commutative algebras.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebras::{truncated_polynomial, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::exactlin::{solve, Matrix, PrimeField, Scalar, Subspace};
use crate::semigroups::{Elem, ElementSubset, ZERO};

/// Largest number of elements enumerated by the exhaustive routes.
pub const DEFAULT_EXHAUSTIVE_CAP: u128 = 1 << 20;

const ADDITIVITY_SAMPLES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PowerMethod {
    /// `n` is a power of the characteristic; the map is linear.
    FrobeniusLinear,
    /// The characteristic exceeds `n`, so the span of the powers is `R^n`.
    SubsetSumSpan,
    /// Every element was enumerated; only the span is returned.
    Exhaustive,
}

impl std::fmt::Display for PowerMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PowerMethod::FrobeniusLinear => "frobenius-linear",
            PowerMethod::SubsetSumSpan => "subset-sum-span",
            PowerMethod::Exhaustive => "exhaustive",
        })
    }
}

fn require_commutative(r: &FiniteAlgebra) -> Result<()> {
    if r.is_commutative() {
        Ok(())
    } else {
        Err(Error::NotCommutative)
    }
}

/// `Some(k)` when `n = p^k`.
pub fn log_p(n: u64, p: u64) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let (mut m, mut k) = (n, 0);
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some(k)
}

fn field_power(field: PrimeField, dim: usize) -> u128 {
    (field.order() as u128)
        .checked_pow(dim as u32)
        .unwrap_or(u128::MAX)
}

fn check_cap(what: &'static str, needed: u128, cap: u128) -> Result<()> {
    if needed > cap {
        Err(Error::CapExceeded { what, needed, cap })
    } else {
        Ok(())
    }
}

/// `x^p` by repeated multiplication, for the additivity spot check.
fn frobenius_once(r: &FiniteAlgebra, v: &[Scalar]) -> Vec<Scalar> {
    r.pow(v, r.characteristic())
}

/// Matrix of `x -> x^(p^k)`; column `i` is the image of basis element `i`.
pub fn frobenius_matrix(r: &FiniteAlgebra, k: u32) -> Result<Matrix> {
    require_commutative(r)?;
    if k == 0 {
        return Err(Error::ZeroExponent);
    }
    let columns: Vec<Vec<Scalar>> = (0..r.dim())
        .map(|i| {
            let mut v = r.basis_vector(i);
            for _ in 0..k {
                v = frobenius_once(r, &v);
            }
            v
        })
        .collect();
    let m = Matrix::from_columns(r.field(), r.dim(), &columns)?;

    let mut rng = ChaCha8Rng::seed_from_u64(0xf70b);
    let p = r.characteristic();
    for _ in 0..ADDITIVITY_SAMPLES.min(r.dim() * r.dim()) {
        let u: Vec<Scalar> = (0..r.dim()).map(|_| rng.gen_range(0..p)).collect();
        let v: Vec<Scalar> = (0..r.dim()).map(|_| rng.gen_range(0..p)).collect();
        let lhs = frobenius_once(r, &r.add(&u, &v));
        let rhs = r.add(&frobenius_once(r, &u), &frobenius_once(r, &v));
        if lhs != rhs {
            return Err(Error::InvalidAlgebra(
                "p-th power map is not additive".into(),
            ));
        }
    }
    Ok(m)
}

/// Every `n`-th power in `R`, by enumeration.
pub fn power_set_exhaustive(r: &FiniteAlgebra, n: u64, cap: u128) -> Result<BTreeSet<Vec<Scalar>>> {
    if n == 0 {
        return Err(Error::ZeroExponent);
    }
    check_cap("power enumeration", field_power(r.field(), r.dim()), cap)?;
    Ok(r.whole_space().elements().map(|v| r.pow(&v, n)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerImage {
    /// `R^(n)` itself for the linear method, otherwise `span(R^(n))`.
    pub span: Subspace,
    pub method: PowerMethod,
    /// Distinct `n`-th powers, when they were enumerated.
    pub distinct_powers: Option<usize>,
}

/// The span of the `n`-th powers of `R`, with [`DEFAULT_EXHAUSTIVE_CAP`].
pub fn power_image(r: &FiniteAlgebra, n: u64) -> Result<PowerImage> {
    power_image_capped(r, n, DEFAULT_EXHAUSTIVE_CAP)
}

pub fn power_image_capped(r: &FiniteAlgebra, n: u64, cap: u128) -> Result<PowerImage> {
    require_commutative(r)?;
    if n == 0 {
        return Err(Error::ZeroExponent);
    }
    let p = r.characteristic();
    if let Some(k) = log_p(n, p) {
        let span = if k == 0 {
            r.whole_space()
        } else {
            frobenius_matrix(r, k)?.column_space()
        };
        return Ok(PowerImage {
            span,
            method: PowerMethod::FrobeniusLinear,
            distinct_powers: None,
        });
    }
    if p > n {
        let span = r
            .power_spaces(&r.whole_space(), n as usize)
            .pop()
            .expect("n >= 1");
        return Ok(PowerImage {
            span,
            method: PowerMethod::SubsetSumSpan,
            distinct_powers: None,
        });
    }
    let powers = power_set_exhaustive(r, n, cap)?;
    let rows: Vec<&Vec<Scalar>> = powers.iter().collect();
    Ok(PowerImage {
        span: Subspace::from_rows(r.field(), r.dim(), &rows)?,
        method: PowerMethod::Exhaustive,
        distinct_powers: Some(powers.len()),
    })
}

/// A subspace carried bijectively onto `R^(p)` by the Frobenius map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionWitness {
    pub v: Subspace,
    pub image: Subspace,
    /// One chosen `p`-th root per basis vector of `image`, in order.
    pub root_of: Vec<Vec<Scalar>>,
}

/// Root section over the whole algebra.
pub fn root_section(r: &FiniteAlgebra) -> Result<SectionWitness> {
    root_section_within(r, &r.whole_space())
}

/// Root section with roots taken inside `domain`; the image is the image
/// of `domain` under the Frobenius map.
pub fn root_section_within(r: &FiniteAlgebra, domain: &Subspace) -> Result<SectionWitness> {
    if domain.ambient_dim() != r.dim() {
        return Err(Error::AmbientMismatch {
            left: r.dim(),
            right: domain.ambient_dim(),
        });
    }
    let frob = frobenius_matrix(r, 1)?;
    let basis: Vec<Vec<Scalar>> = domain.basis_vectors().map(<[Scalar]>::to_vec).collect();
    let images = basis
        .iter()
        .map(|b| frob.mul_vec(b))
        .collect::<Result<Vec<_>>>()?;
    // Frobenius restricted to the domain, in the domain's coordinates.
    let restricted = Matrix::from_columns(r.field(), r.dim(), &images)?;
    let image = restricted.column_space();
    let mut root_of = Vec::with_capacity(image.dim());
    for b in image.basis_vectors() {
        let coords = solve(&restricted, b)?.expect("image vectors have preimages");
        root_of.push(domain.combine(&coords));
    }
    let v = Subspace::from_rows(r.field(), r.dim(), &root_of)?;
    let v_images = v
        .basis_vectors()
        .map(|b| frob.mul_vec(b))
        .collect::<Result<Vec<_>>>()?;
    let rank = Matrix::from_rows(r.field(), r.dim(), &v_images)?.rank();
    if v.dim() != image.dim() || rank != v.dim() {
        return Err(Error::InvalidAlgebra(
            "root section is not a bijection".into(),
        ));
    }
    Ok(SectionWitness { v, image, root_of })
}

/// `(dim V, dim V^2, ..., dim V^n)`.
pub fn power_dims_profile(r: &FiniteAlgebra, v: &Subspace, n: usize) -> Vec<usize> {
    r.power_spaces(v, n).iter().map(Subspace::dim).collect()
}

/// `(dim R, dim R^(n), n dim R^(n) - dim R)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EggertReport {
    #[serde(rename = "dim")]
    pub dim_r: usize,
    pub image_dim: usize,
    pub deficit: i64,
    pub ratio: (usize, usize),
    pub method: PowerMethod,
}

impl EggertReport {
    fn new(n: u64, dim_r: usize, image_dim: usize, method: PowerMethod) -> Self {
        Self {
            dim_r,
            image_dim,
            deficit: n as i64 * image_dim as i64 - dim_r as i64,
            ratio: (image_dim, dim_r),
            method,
        }
    }
}

pub fn eggert_report(r: &FiniteAlgebra, n: u64) -> Result<EggertReport> {
    let image = power_image(r, n)?;
    Ok(EggertReport::new(
        n,
        r.dim(),
        image.span.dim(),
        image.method,
    ))
}

/// Whether every nonzero element of `V` has nonzero `n`-th power: by rank
/// when `n` is a power of the characteristic, otherwise by enumeration.
pub fn injectivity_check(r: &FiniteAlgebra, v: &Subspace, n: u64, cap: u128) -> Result<bool> {
    require_commutative(r)?;
    if n == 0 {
        return Err(Error::ZeroExponent);
    }
    if let Some(k) = log_p(n, r.characteristic()) {
        if k == 0 {
            return Ok(true);
        }
        let frob = frobenius_matrix(r, k)?;
        let images = v
            .basis_vectors()
            .map(|b| frob.mul_vec(b))
            .collect::<Result<Vec<_>>>()?;
        return Ok(Matrix::from_rows(r.field(), r.dim(), &images)?.rank() == v.dim());
    }
    check_cap("subspace enumeration", field_power(r.field(), v.dim()), cap)?;
    Ok(v.elements()
        .all(|x| x.iter().all(|&c| c == 0) || r.pow(&x, n).iter().any(|&c| c != 0)))
}

/// Whether `x -> x^n` is one-to-one on `X` and sends no nonzero member to 0.
pub fn set_injectivity_check(x: &ElementSubset<'_>, n: u64) -> bool {
    let s = x.parent();
    let mut seen = BTreeSet::new();
    for &e in x.members() {
        let pe = s.pow(e, n);
        if e != ZERO && pe == ZERO {
            return false;
        }
        if !seen.insert(pe) {
            return false;
        }
    }
    true
}

/// The span of the basis vectors indexed by a subset of a semigroup, inside
/// its contracted algebra (basis index = element index - 1).
pub fn span_of_subset(field: PrimeField, x: &ElementSubset<'_>) -> Subspace {
    let coords: Vec<usize> = x
        .members()
        .iter()
        .filter(|&&e| e != ZERO)
        .map(|&e: &Elem| e - 1)
        .collect();
    Subspace::coordinate(field, x.parent().card_nonzero(), &coords)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub n: usize,
    pub p: u64,
    /// Coefficient of `x_1 ... x_n` on each side.
    pub lhs_coefficient: Scalar,
    pub rhs_coefficient: Scalar,
    pub holds: bool,
}

/// Alternating subset-sum identity
/// `sum_S (-1)^|S| (sum_{i in S} x_i)^n = (-1)^n n! x_1 ... x_n`
/// evaluated in the truncated polynomial algebra on `n` variables.
pub fn identity_check_4_5(field: PrimeField, n: usize) -> Result<IdentityCheck> {
    let p = field.modulus();
    if n == 0 {
        return Err(Error::ZeroExponent);
    }
    if p <= n as u64 {
        return Err(Error::CharTooSmall { p, n });
    }
    let (r, _) = truncated_polynomial(field, n, n, true)?;
    let vars: Vec<Vec<Scalar>> = (0..n).map(|i| r.basis_vector(i)).collect();
    let mut lhs = r.zero();
    for mask in 1u64..(1 << n) {
        let mut sum = r.zero();
        for (i, v) in vars.iter().enumerate() {
            if mask >> i & 1 == 1 {
                sum = r.add(&sum, v);
            }
        }
        let term = r.pow(&sum, n as u64);
        let term = if mask.count_ones() % 2 == 1 {
            r.scale(field.neg(1), &term)
        } else {
            term
        };
        lhs = r.add(&lhs, &term);
    }
    let product = vars[1..]
        .iter()
        .fold(vars[0].clone(), |acc, v| r.mul(&acc, v));
    let factorial = (1..=n as u64).fold(1, |acc, k| field.mul(acc, field.reduce(k)));
    let sign = if n.is_multiple_of(2) { 1 } else { field.neg(1) };
    let rhs = r.scale(field.mul(sign, factorial), &product);
    let top = product
        .iter()
        .position(|&c| c != 0)
        .expect("x_1...x_n is a basis monomial");
    Ok(IdentityCheck {
        n,
        p,
        lhs_coefficient: lhs[top],
        rhs_coefficient: rhs[top],
        holds: lhs == rhs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnQuotient {
    /// `dim(V / Ann_V V^n)`.
    pub lhs: usize,
    /// `dim V^n`.
    pub rhs: usize,
    pub holds: bool,
}

/// Compares `dim(V / Ann_V V^n)` with `dim V^n`.
pub fn ann_quotient_check(r: &FiniteAlgebra, v: &Subspace, n: usize) -> Result<AnnQuotient> {
    require_commutative(r)?;
    if n == 0 {
        return Err(Error::ZeroExponent);
    }
    if v.ambient_dim() != r.dim() {
        return Err(Error::AmbientMismatch {
            left: r.dim(),
            right: v.ambient_dim(),
        });
    }
    let vn = r.power_spaces(v, n).pop().expect("n >= 1");
    let wide = vn.dim() * r.dim();
    // Row j lists b_j * w for every basis vector w of V^n; its left kernel is Ann.
    let rows: Vec<Vec<Scalar>> = v
        .basis_vectors()
        .map(|b| vn.basis_vectors().flat_map(|w| r.mul(b, w)).collect())
        .collect();
    let lhs = if wide == 0 {
        0
    } else {
        Matrix::from_rows(r.field(), wide, &rows)?.rank()
    };
    Ok(AnnQuotient {
        lhs,
        rhs: vn.dim(),
        holds: lhs <= vn.dim(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuestionMode {
    /// Every nonzero element of the subspace has nonzero `n`-th power.
    V,
    /// Every element of the subspace is an `n`-th power in `R`.
    W,
    /// Every nonzero element has an `m`-th root whose `n`-th power is nonzero.
    U { m: u64 },
}

/// Outcome of a probe. The inequality is only evaluated when the
/// hypothesis holds; nothing here is asserted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeRecord {
    pub mode: QuestionMode,
    pub n: u64,
    pub dim_r: usize,
    pub dim_subspace: usize,
    pub hypothesis_holds: bool,
    pub inequality_holds: Option<bool>,
    pub elements_checked: u128,
}

pub fn question_probe(
    r: &FiniteAlgebra,
    sub: &Subspace,
    n: u64,
    mode: QuestionMode,
    cap: u128,
) -> Result<ProbeRecord> {
    require_commutative(r)?;
    if n == 0 {
        return Err(Error::ZeroExponent);
    }
    if sub.ambient_dim() != r.dim() {
        return Err(Error::AmbientMismatch {
            left: r.dim(),
            right: sub.ambient_dim(),
        });
    }
    if r.nilpotency_index().is_none() {
        return Err(Error::InvalidAlgebra(
            "probes require a nilpotent algebra".into(),
        ));
    }
    let is_zero = |v: &[Scalar]| v.iter().all(|&c| c == 0);
    let (hypothesis, checked) = match mode {
        QuestionMode::V => {
            let size = field_power(r.field(), sub.dim());
            check_cap("subspace enumeration", size, cap)?;
            let ok = sub
                .elements()
                .all(|x| is_zero(&x) || !is_zero(&r.pow(&x, n)));
            (ok, size)
        }
        QuestionMode::W => {
            let powers = power_set_exhaustive(r, n, cap)?;
            let ok = sub.elements().all(|w| powers.contains(&w));
            (ok, field_power(r.field(), r.dim()))
        }
        QuestionMode::U { m } => {
            if m == 0 || m > n {
                return Err(Error::InvalidConfig(format!(
                    "need 1 <= m <= n, got m={m}, n={n}"
                )));
            }
            let size = field_power(r.field(), r.dim());
            check_cap("algebra enumeration", size, cap)?;
            let good_roots: BTreeSet<Vec<Scalar>> = r
                .whole_space()
                .elements()
                .filter(|x| !is_zero(&r.pow(x, n)))
                .map(|x| r.pow(&x, m))
                .collect();
            let ok = sub
                .elements()
                .all(|u| is_zero(&u) || good_roots.contains(&u));
            (ok, size)
        }
    };
    Ok(ProbeRecord {
        mode,
        n,
        dim_r: r.dim(),
        dim_subspace: sub.dim(),
        hypothesis_holds: hypothesis,
        inequality_holds: hypothesis.then(|| r.dim() as u64 >= n * sub.dim() as u64),
        elements_checked: checked,
    })
}
