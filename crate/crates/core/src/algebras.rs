//! Finite-dimensional, not necessarily unital, associative algebras over
//! GF(p), given by structure constants on a labelled basis.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactlin::{Matrix, PrimeField, Scalar, Subspace};
use crate::semigroups::{power_label, SemigroupWithZero, ZERO};

/// Up to this dimension associativity is checked on every basis triple;
/// above it a fixed pseudo-random sample of triples is checked.
pub const DEFAULT_ASSOC_CHECK_DIM: usize = 64;

/// Number of sampled triples above [`DEFAULT_ASSOC_CHECK_DIM`].
pub const ASSOC_SAMPLE_TRIPLES: usize = 4096;

/// Cap on the basis size of generated monomial algebras.
pub const DEFAULT_BASIS_CAP: usize = 2048;

/// Cap on `(d+1)^max_degree` for [`forbidden_word_dims`].
pub const WORD_ENUMERATION_CAP: u128 = 1 << 26;

/// Sparse product `e_i * e_j`: `(basis index, coefficient)` pairs, sorted by
/// index, no zero coefficients.
pub type SparseVec = Vec<(usize, Scalar)>;

/// A finite-dimensional algebra by structure constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    field: PrimeField,
    labels: Vec<String>,
    products: Vec<SparseVec>,
    commutative: bool,
}

fn normalize(field: PrimeField, dim: usize, v: SparseVec) -> Result<SparseVec> {
    let mut acc: std::collections::BTreeMap<usize, Scalar> = Default::default();
    for (k, c) in v {
        if k >= dim {
            return Err(Error::InvalidAlgebra(format!(
                "basis index {k} out of range"
            )));
        }
        let e = acc.entry(k).or_insert(0);
        *e = field.add(*e, field.reduce(c));
    }
    Ok(acc.into_iter().filter(|&(_, c)| c != 0).collect())
}

impl FiniteAlgebra {
    /// `products[i * dim + j]` is `e_i * e_j`. Validates commutativity when
    /// flagged and associativity (see [`DEFAULT_ASSOC_CHECK_DIM`]).
    pub fn new(
        field: PrimeField,
        labels: Vec<String>,
        products: Vec<SparseVec>,
        commutative: bool,
    ) -> Result<Self> {
        let alg = Self::new_unchecked(field, labels, products, commutative)?;
        alg.check_commutativity()?;
        alg.check_associativity(DEFAULT_ASSOC_CHECK_DIM)?;
        Ok(alg)
    }

    fn new_unchecked(
        field: PrimeField,
        labels: Vec<String>,
        products: Vec<SparseVec>,
        commutative: bool,
    ) -> Result<Self> {
        let dim = labels.len();
        if products.len() != dim * dim {
            return Err(Error::InvalidAlgebra(format!(
                "{} products for dimension {dim}",
                products.len()
            )));
        }
        let products = products
            .into_iter()
            .map(|v| normalize(field, dim, v))
            .collect::<Result<_>>()?;
        Ok(Self {
            field,
            labels,
            products,
            commutative,
        })
    }

    /// The zero-dimensional algebra.
    pub fn zero_algebra(field: PrimeField) -> Self {
        Self {
            field,
            labels: Vec::new(),
            products: Vec::new(),
            commutative: true,
        }
    }

    /// `dim`-dimensional algebra with all products zero.
    pub fn zero_product(field: PrimeField, labels: Vec<String>) -> Self {
        let dim = labels.len();
        Self {
            field,
            labels,
            products: vec![Vec::new(); dim * dim],
            commutative: true,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn characteristic(&self) -> u64 {
        self.field.modulus()
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Basis index of a label; `x` and `x^1` are interchangeable.
    pub fn find_label(&self, label: &str) -> Option<usize> {
        let alias = label.strip_suffix("^1").map(str::to_string);
        self.labels
            .iter()
            .position(|l| l == label || alias.as_deref() == Some(l.as_str()))
    }

    pub fn product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.products[i * self.dim() + j]
    }

    pub fn zero(&self) -> Vec<Scalar> {
        vec![0; self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero();
        v[i] = 1;
        v
    }

    /// An element from `(label, coefficient)` terms; coefficients may be negative.
    pub fn element(&self, terms: &[(&str, i64)]) -> Result<Vec<Scalar>> {
        let mut v = self.zero();
        for &(label, c) in terms {
            let i = self
                .find_label(label)
                .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
            v[i] = self.field.add(v[i], self.field.from_i64(c));
        }
        Ok(v)
    }

    pub fn add(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| self.field.add(x, y))
            .collect()
    }

    pub fn scale(&self, c: Scalar, a: &[Scalar]) -> Vec<Scalar> {
        a.iter().map(|&x| self.field.mul(c, x)).collect()
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let f = self.field;
        let dim = self.dim();
        let mut out = vec![0; dim];
        let nz_b: Vec<(usize, Scalar)> = b
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c != 0)
            .map(|(j, &c)| (j, c))
            .collect();
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for &(j, bj) in &nz_b {
                let c = f.mul(ai, bj);
                for &(k, s) in &self.products[i * dim + j] {
                    out[k] = f.add(out[k], f.mul(c, s));
                }
            }
        }
        out
    }

    /// `a^n` for `n >= 1`.
    pub fn pow(&self, a: &[Scalar], n: u64) -> Vec<Scalar> {
        assert!(n >= 1, "powers start at 1 in a non-unital algebra");
        let mut acc = a.to_vec();
        let mut base = a.to_vec();
        let mut e = n - 1;
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

    fn sparse_times_basis(&self, v: &[(usize, Scalar)], k: usize, left: bool) -> Vec<Scalar> {
        let f = self.field;
        let mut out = self.zero();
        for &(m, c) in v {
            let prod = if left {
                self.product(m, k)
            } else {
                self.product(k, m)
            };
            for &(t, s) in prod {
                out[t] = f.add(out[t], f.mul(c, s));
            }
        }
        out
    }

    fn associative_on(&self, i: usize, j: usize, k: usize) -> bool {
        let left = self.sparse_times_basis(self.product(i, j), k, true);
        let right = self.sparse_times_basis(self.product(j, k), i, false);
        left == right
    }

    /// Exhaustive on basis triples up to `cap` dimensions, sampled above.
    pub fn check_associativity(&self, cap: usize) -> Result<()> {
        let dim = self.dim();
        let fail = |i: usize, j: usize, k: usize| {
            Err(Error::InvalidAlgebra(format!(
                "not associative on ({}, {}, {})",
                self.labels[i], self.labels[j], self.labels[k]
            )))
        };
        if dim <= cap {
            for i in 0..dim {
                for j in 0..dim {
                    for k in 0..dim {
                        if !self.associative_on(i, j, k) {
                            return fail(i, j, k);
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0xa55_0c1a);
            for _ in 0..ASSOC_SAMPLE_TRIPLES {
                let (i, j, k) = (
                    rng.gen_range(0..dim),
                    rng.gen_range(0..dim),
                    rng.gen_range(0..dim),
                );
                if !self.associative_on(i, j, k) {
                    return fail(i, j, k);
                }
            }
        }
        Ok(())
    }

    fn check_commutativity(&self) -> Result<()> {
        if !self.commutative {
            return Ok(());
        }
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                if self.product(i, j) != self.product(j, i) {
                    return Err(Error::InvalidAlgebra(format!(
                        "flagged commutative but {} * {} differs from {} * {}",
                        self.labels[i], self.labels[j], self.labels[j], self.labels[i]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn whole_space(&self) -> Subspace {
        Subspace::full(self.field, self.dim())
    }

    /// `A * B` for subspaces: the span of products of basis vectors.
    pub fn product_space(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut out = Subspace::zero(self.field, self.dim());
        for u in a.basis_vectors() {
            for v in b.basis_vectors() {
                out.insert(&self.mul(u, v)).expect("same ambient dimension");
            }
        }
        out
    }

    /// `V, V^2, ..., V^n` as subspaces.
    pub fn power_spaces(&self, v: &Subspace, n: usize) -> Vec<Subspace> {
        let mut out = Vec::with_capacity(n);
        if n == 0 {
            return out;
        }
        out.push(v.clone());
        for _ in 1..n {
            let next = self.product_space(out.last().expect("nonempty"), v);
            out.push(next);
        }
        out
    }

    /// Least `n` with `R^n = 0`, or `None` if the powers stabilise.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let whole = self.whole_space();
        let mut current = whole.clone();
        let mut n = 1;
        loop {
            if current.is_zero() {
                return Some(n);
            }
            let next = self.product_space(&current, &whole);
            if next == current {
                return None;
            }
            current = next;
            n += 1;
        }
    }
}

/// Thin element handle pairing coordinates with their algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement<'a> {
    parent: &'a FiniteAlgebra,
    coords: Vec<Scalar>,
}

impl<'a> AlgebraElement<'a> {
    pub fn new(parent: &'a FiniteAlgebra, coords: Vec<Scalar>) -> Result<Self> {
        if coords.len() != parent.dim() {
            return Err(Error::AmbientMismatch {
                left: parent.dim(),
                right: coords.len(),
            });
        }
        let f = parent.field();
        let coords = coords.into_iter().map(|c| f.reduce(c)).collect();
        Ok(Self { parent, coords })
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn mul(&self, other: &AlgebraElement<'a>) -> AlgebraElement<'a> {
        AlgebraElement {
            parent: self.parent,
            coords: self.parent.mul(&self.coords, &other.coords),
        }
    }

    pub fn add(&self, other: &AlgebraElement<'a>) -> AlgebraElement<'a> {
        AlgebraElement {
            parent: self.parent,
            coords: self.parent.add(&self.coords, &other.coords),
        }
    }

    pub fn pow(&self, n: u64) -> AlgebraElement<'a> {
        AlgebraElement {
            parent: self.parent,
            coords: self.parent.pow(&self.coords, n),
        }
    }
}

impl std::fmt::Display for AlgebraElement<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c != 0)
            .map(|(i, &c)| {
                if c == 1 {
                    self.parent.label(i).to_string()
                } else {
                    format!("{c}*{}", self.parent.label(i))
                }
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Positive-integer grading on the basis of an algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedView {
    degree_of: Vec<usize>,
    max_degree: usize,
}

impl GradedView {
    /// Checks that every product of basis elements lands in the degree that
    /// is the sum of the factors' degrees.
    pub fn new(alg: &FiniteAlgebra, degree_of: Vec<usize>) -> Result<Self> {
        if degree_of.len() != alg.dim() {
            return Err(Error::InvalidAlgebra(
                "one degree per basis element is required".into(),
            ));
        }
        if degree_of.contains(&0) {
            return Err(Error::InvalidAlgebra("degrees must be positive".into()));
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                for &(k, _) in alg.product(i, j) {
                    if degree_of[k] != degree_of[i] + degree_of[j] {
                        return Err(Error::InvalidAlgebra(format!(
                            "grading: {} * {} has a term {} in the wrong degree",
                            alg.label(i),
                            alg.label(j),
                            alg.label(k)
                        )));
                    }
                }
            }
        }
        let max_degree = degree_of.iter().copied().max().unwrap_or(0);
        Ok(Self {
            degree_of,
            max_degree,
        })
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degree_of[i]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degree_of
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn indices_of_degree(&self, d: usize) -> Vec<usize> {
        (0..self.degree_of.len())
            .filter(|&i| self.degree_of[i] == d)
            .collect()
    }

    pub fn component_dims(&self) -> Vec<usize> {
        (1..=self.max_degree)
            .map(|d| self.degree_of.iter().filter(|&&x| x == d).count())
            .collect()
    }
}

/// One homogeneous component `R_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedComponent {
    pub degree: usize,
    pub dim: usize,
    pub basis: Subspace,
}

/// The homogeneous components `R_1, ..., R_max`.
pub fn graded_components(alg: &FiniteAlgebra, view: &GradedView) -> Vec<GradedComponent> {
    (1..=view.max_degree())
        .map(|d| {
            let idx = view.indices_of_degree(d);
            GradedComponent {
                degree: d,
                dim: idx.len(),
                basis: Subspace::coordinate(alg.field(), alg.dim(), &idx),
            }
        })
        .collect()
}

/// Whether `R` is generated as an algebra by its degree-one component.
pub fn generated_in_degree_one(alg: &FiniteAlgebra, view: &GradedView) -> Result<bool> {
    let gens: Vec<Vec<Scalar>> = view
        .indices_of_degree(1)
        .into_iter()
        .map(|i| alg.basis_vector(i))
        .collect();
    Ok(span_closure(alg, &gens)?.dim() == alg.dim())
}

/// Contracted semigroup algebra: basis `S - {0}`, products from the table,
/// with the semigroup zero sent to the algebra zero.
pub fn contracted_algebra(s: &SemigroupWithZero, field: PrimeField) -> FiniteAlgebra {
    let dim = s.card_nonzero();
    let mut products = Vec::with_capacity(dim * dim);
    for a in 1..=dim {
        for b in 1..=dim {
            let c = s.mul(a, b);
            products.push(if c == ZERO {
                Vec::new()
            } else {
                vec![(c - 1, 1)]
            });
        }
    }
    let labels = s.labels()[1..].to_vec();
    // The table was validated on construction, so the algebra is too.
    FiniteAlgebra::new_unchecked(field, labels, products, true).expect("indices are in range")
}

fn default_var_names(vars: usize) -> Vec<String> {
    if vars == 1 {
        vec!["x".into()]
    } else {
        (1..=vars).map(|i| format!("x{i}")).collect()
    }
}

/// `[F][x_1..x_d]` (or its free noncommutative analogue) truncated above
/// total degree `max_degree`, with variables named `x` or `x1, x2, ...`.
pub fn truncated_polynomial(
    field: PrimeField,
    vars: usize,
    max_degree: usize,
    commutative: bool,
) -> Result<(FiniteAlgebra, GradedView)> {
    let names = default_var_names(vars);
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    truncated_polynomial_named(field, &names, max_degree, commutative)
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// [`truncated_polynomial`] with explicit variable names.
pub fn truncated_polynomial_named(
    field: PrimeField,
    names: &[&str],
    max_degree: usize,
    commutative: bool,
) -> Result<(FiniteAlgebra, GradedView)> {
    let d = names.len();
    if d == 0 || max_degree == 0 {
        return Err(Error::InvalidAlgebra(
            "need at least one variable and degree".into(),
        ));
    }
    let count: u128 = if commutative {
        binomial(d + max_degree, max_degree) - 1
    } else {
        (1..=max_degree as u32).map(|k| (d as u128).pow(k)).sum()
    };
    if count > DEFAULT_BASIS_CAP as u128 {
        return Err(Error::CapExceeded {
            what: "truncated polynomial basis",
            needed: count,
            cap: DEFAULT_BASIS_CAP as u128,
        });
    }
    if commutative {
        commutative_monomials(field, names, max_degree)
    } else {
        word_algebra(field, names, max_degree, |_| true)
    }
}

fn exponent_vectors(d: usize, degree: usize) -> Vec<Vec<u32>> {
    // Descending lexicographic: x1^degree first.
    if d == 1 {
        return vec![vec![degree as u32]];
    }
    (0..=degree)
        .rev()
        .flat_map(|a| {
            exponent_vectors(d - 1, degree - a)
                .into_iter()
                .map(move |mut rest| {
                    rest.insert(0, a as u32);
                    rest
                })
        })
        .collect()
}

fn monomial_label(names: &[&str], exps: &[u32]) -> String {
    exps.iter()
        .zip(names)
        .filter(|(&e, _)| e > 0)
        .map(|(&e, n)| power_label(n, e as u64))
        .collect::<Vec<_>>()
        .join("*")
}

fn commutative_monomials(
    field: PrimeField,
    names: &[&str],
    max_degree: usize,
) -> Result<(FiniteAlgebra, GradedView)> {
    let d = names.len();
    let monomials: Vec<Vec<u32>> = (1..=max_degree)
        .flat_map(|k| exponent_vectors(d, k))
        .collect();
    let index: HashMap<&[u32], usize> = monomials
        .iter()
        .enumerate()
        .map(|(i, m)| (m.as_slice(), i))
        .collect();
    let dim = monomials.len();
    let mut products = Vec::with_capacity(dim * dim);
    for a in &monomials {
        for b in &monomials {
            let sum: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            products.push(match index.get(sum.as_slice()) {
                Some(&k) => vec![(k, 1)],
                None => Vec::new(),
            });
        }
    }
    let labels = monomials.iter().map(|m| monomial_label(names, m)).collect();
    let degrees = monomials
        .iter()
        .map(|m| m.iter().sum::<u32>() as usize)
        .collect();
    let alg = FiniteAlgebra::new(field, labels, products, true)?;
    let view = GradedView::new(&alg, degrees)?;
    Ok((alg, view))
}

/// Monomial algebra on words of length `1..=max_degree` over `letters` for
/// which `allowed` holds; products concatenate, or vanish when the result
/// is not allowed or too long. `allowed` must be closed under taking factors.
pub fn word_algebra(
    field: PrimeField,
    letters: &[&str],
    max_degree: usize,
    allowed: impl Fn(&[usize]) -> bool,
) -> Result<(FiniteAlgebra, GradedView)> {
    let mut words: Vec<Vec<usize>> = letters.iter().enumerate().map(|(i, _)| vec![i]).collect();
    words.retain(|w| allowed(w));
    let mut frontier = words.clone();
    for _ in 1..max_degree {
        let mut next = Vec::new();
        for w in &frontier {
            for c in 0..letters.len() {
                let mut v = w.clone();
                v.push(c);
                if allowed(&v) {
                    next.push(v);
                }
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
        if words.len() > DEFAULT_BASIS_CAP {
            return Err(Error::CapExceeded {
                what: "word algebra basis",
                needed: words.len() as u128,
                cap: DEFAULT_BASIS_CAP as u128,
            });
        }
    }
    let index: HashMap<&[usize], usize> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.as_slice(), i))
        .collect();
    let dim = words.len();
    let mut products = Vec::with_capacity(dim * dim);
    for a in &words {
        for b in &words {
            let mut ab = a.clone();
            ab.extend_from_slice(b);
            products.push(match index.get(ab.as_slice()) {
                Some(&k) => vec![(k, 1)],
                None => Vec::new(),
            });
        }
    }
    let labels = words
        .iter()
        .map(|w| w.iter().map(|&c| letters[c]).collect::<Vec<_>>().join("*"))
        .collect();
    let degrees = words.iter().map(Vec::len).collect();
    let commutative = letters.len() <= 1;
    let alg = FiniteAlgebra::new(field, labels, products, commutative)?;
    let view = GradedView::new(&alg, degrees)?;
    Ok((alg, view))
}

// Letters: 0 = x, 1 = y, 2.. = z_1..z_{d-1}.
const LETTER_X: usize = 0;
const LETTER_Y: usize = 1;

/// Whether appending `c` to an allowed word `w` keeps it free of `xx`, `yy`
/// and of three-letter factors that do not contain `xy`.
fn extends_allowed(w: &[usize], c: usize) -> bool {
    let n = w.len();
    if n >= 1 {
        let last = w[n - 1];
        if last == c && (c == LETTER_X || c == LETTER_Y) {
            return false;
        }
    }
    if n >= 2 {
        let xy_first = w[n - 2] == LETTER_X && w[n - 1] == LETTER_Y;
        let xy_second = w[n - 1] == LETTER_X && c == LETTER_Y;
        if !xy_first && !xy_second {
            return false;
        }
    }
    true
}

fn word_allowed(w: &[usize]) -> bool {
    (0..w.len()).all(|i| extends_allowed(&w[..i], w[i]))
}

/// Dimensions of the components `R_1..R_max` of the monomial algebra on
/// `x, y, z_1..z_{d-1}` with `xx = yy = 0` and every three-letter word
/// lacking the factor `xy` set to zero.
pub fn forbidden_word_dims(d: usize, max_degree: usize) -> Result<Vec<usize>> {
    if d == 0 {
        return Err(Error::InvalidAlgebra("need d >= 1".into()));
    }
    let brute = ((d + 1) as u128)
        .checked_pow(max_degree as u32)
        .unwrap_or(u128::MAX);
    if brute > WORD_ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: "word enumeration",
            needed: brute,
            cap: WORD_ENUMERATION_CAP,
        });
    }
    let letters = d + 1;
    let mut dims = Vec::with_capacity(max_degree);
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for w in &frontier {
            for c in 0..letters {
                if extends_allowed(w, c) {
                    let mut v = w.clone();
                    v.push(c);
                    next.push(v);
                }
            }
        }
        dims.push(next.len());
        frontier = next;
    }
    Ok(dims)
}

/// The graded monomial algebra behind [`forbidden_word_dims`].
pub fn forbidden_word_algebra(
    field: PrimeField,
    d: usize,
    max_degree: usize,
) -> Result<(FiniteAlgebra, GradedView)> {
    if d == 0 {
        return Err(Error::InvalidAlgebra("need d >= 1".into()));
    }
    let mut names = vec!["x".to_string(), "y".to_string()];
    names.extend((1..d).map(|k| format!("z{k}")));
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    word_algebra(field, &names, max_degree, word_allowed)
}

fn span_closure(alg: &FiniteAlgebra, gens: &[Vec<Scalar>]) -> Result<Subspace> {
    let mut space = Subspace::from_rows(alg.field(), alg.dim(), gens)?;
    loop {
        let basis: Vec<Vec<Scalar>> = space.basis_vectors().map(<[Scalar]>::to_vec).collect();
        let mut grew = false;
        for a in &basis {
            for b in &basis {
                grew |= space.insert(&alg.mul(a, b))?;
            }
        }
        if !grew {
            return Ok(space);
        }
    }
}

/// Restrict the structure constants of `alg` to a subspace closed under
/// multiplication, using its canonical basis.
fn induced_algebra(alg: &FiniteAlgebra, space: &Subspace) -> Result<FiniteAlgebra> {
    let basis: Vec<Vec<Scalar>> = space.basis_vectors().map(<[Scalar]>::to_vec).collect();
    let mut products = Vec::with_capacity(basis.len() * basis.len());
    for a in &basis {
        for b in &basis {
            let coords = space.coordinates(&alg.mul(a, b))?.ok_or_else(|| {
                Error::InvalidAlgebra("subspace is not closed under products".into())
            })?;
            products.push(
                coords
                    .into_iter()
                    .enumerate()
                    .filter(|&(_, c)| c != 0)
                    .collect(),
            );
        }
    }
    let labels = basis
        .iter()
        .enumerate()
        .map(|(t, v)| {
            let support: Vec<usize> = (0..v.len()).filter(|&i| v[i] != 0).collect();
            match support.as_slice() {
                [i] if v[*i] == 1 => alg.label(*i).to_string(),
                _ => format!("b{t}"),
            }
        })
        .collect();
    FiniteAlgebra::new(alg.field(), labels, products, alg.is_commutative())
}

/// The subalgebra generated by `gens`, with the inclusion as a matrix whose
/// rows are the subalgebra's basis vectors in the coordinates of `alg`.
pub fn subalgebra_generated(
    alg: &FiniteAlgebra,
    gens: &[Vec<Scalar>],
) -> Result<(FiniteAlgebra, Matrix)> {
    let space = span_closure(alg, gens)?;
    let sub = induced_algebra(alg, &space)?;
    Ok((sub, space.basis().clone()))
}

/// The two-sided ideal generated by `gens`.
pub fn ideal_generated(alg: &FiniteAlgebra, gens: &[Vec<Scalar>]) -> Result<Subspace> {
    let mut ideal = Subspace::from_rows(alg.field(), alg.dim(), gens)?;
    let mut work: Vec<Vec<Scalar>> = ideal.basis_vectors().map(<[Scalar]>::to_vec).collect();
    while let Some(v) = work.pop() {
        for j in 0..alg.dim() {
            let e = alg.basis_vector(j);
            let mut prods = vec![alg.mul(&v, &e)];
            if !alg.is_commutative() {
                prods.push(alg.mul(&e, &v));
            }
            for w in prods {
                if ideal.insert(&w)? {
                    work.push(w);
                }
            }
        }
    }
    Ok(ideal)
}

fn check_ideal(alg: &FiniteAlgebra, ideal: &Subspace) -> Result<()> {
    if ideal.ambient_dim() != alg.dim() {
        return Err(Error::AmbientMismatch {
            left: alg.dim(),
            right: ideal.ambient_dim(),
        });
    }
    for v in ideal.basis_vectors() {
        for j in 0..alg.dim() {
            let e = alg.basis_vector(j);
            if !ideal.contains(&alg.mul(v, &e))? || !ideal.contains(&alg.mul(&e, v))? {
                return Err(Error::NotAnIdeal(format!(
                    "not closed under multiplication by {}",
                    alg.label(j)
                )));
            }
        }
    }
    Ok(())
}

/// Quotient by an ideal. The quotient's basis is the set of original basis
/// elements at the non-pivot columns of the ideal's canonical basis; the
/// returned projection matrix maps coordinates of `alg` to the quotient.
pub fn quotient(alg: &FiniteAlgebra, ideal: &Subspace) -> Result<(FiniteAlgebra, Matrix)> {
    let (q, proj, _) = quotient_indices(alg, ideal)?;
    Ok((q, proj))
}

fn quotient_indices(
    alg: &FiniteAlgebra,
    ideal: &Subspace,
) -> Result<(FiniteAlgebra, Matrix, Vec<usize>)> {
    check_ideal(alg, ideal)?;
    let mut is_pivot = vec![false; alg.dim()];
    for &p in ideal.pivots() {
        is_pivot[p] = true;
    }
    let kept: Vec<usize> = (0..alg.dim()).filter(|&i| !is_pivot[i]).collect();
    let project = |v: &[Scalar]| -> Result<Vec<Scalar>> {
        let r = ideal.reduce(v)?;
        Ok(kept.iter().map(|&i| r[i]).collect())
    };
    let mut products = Vec::with_capacity(kept.len() * kept.len());
    for &a in &kept {
        for &b in &kept {
            let mut ab = alg.zero();
            for &(k, c) in alg.product(a, b) {
                ab[k] = c;
            }
            let coords = project(&ab)?;
            products.push(
                coords
                    .into_iter()
                    .enumerate()
                    .filter(|&(_, c)| c != 0)
                    .collect(),
            );
        }
    }
    let labels = kept.iter().map(|&i| alg.label(i).to_string()).collect();
    let q = FiniteAlgebra::new(alg.field(), labels, products, alg.is_commutative())?;
    let columns = (0..alg.dim())
        .map(|j| project(&alg.basis_vector(j)))
        .collect::<Result<Vec<_>>>()?;
    let proj = Matrix::from_columns(alg.field(), kept.len(), &columns)?;
    Ok((q, proj, kept))
}

/// Quotient by an ideal spanned by homogeneous elements, keeping the grading.
pub fn quotient_graded(
    alg: &FiniteAlgebra,
    view: &GradedView,
    ideal: &Subspace,
) -> Result<(FiniteAlgebra, GradedView, Matrix)> {
    let (q, proj, kept) = quotient_indices(alg, ideal)?;
    let degrees = kept.iter().map(|&i| view.degree(i)).collect();
    let qview = GradedView::new(&q, degrees)?;
    Ok((q, qview, proj))
}

/// `R / (R_{degree+1} ⊕ R_{degree+2} ⊕ ...)`.
pub fn truncate_above(
    alg: &FiniteAlgebra,
    view: &GradedView,
    degree: usize,
) -> Result<(FiniteAlgebra, GradedView)> {
    let high: Vec<usize> = (0..alg.dim())
        .filter(|&i| view.degree(i) > degree)
        .collect();
    let ideal = Subspace::coordinate(alg.field(), alg.dim(), &high);
    let (q, qview, _) = quotient_graded(alg, view, &ideal)?;
    Ok((q, qview))
}

fn check_same_field(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<()> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch {
            left: a.characteristic(),
            right: b.characteristic(),
        });
    }
    Ok(())
}

/// `R ⊗ S` with basis `e_i ⊗ f_j` at index `i * dim S + j`.
pub fn tensor_product(r: &FiniteAlgebra, s: &FiniteAlgebra) -> Result<FiniteAlgebra> {
    check_same_field(r, s)?;
    let f = r.field();
    let (dr, ds) = (r.dim(), s.dim());
    let dim = dr * ds;
    let mut products = vec![Vec::new(); dim * dim];
    for i in 0..dr {
        for j in 0..ds {
            for k in 0..dr {
                for l in 0..ds {
                    let mut out = Vec::new();
                    for &(m, c) in r.product(i, k) {
                        for &(n, d) in s.product(j, l) {
                            out.push((m * ds + n, f.mul(c, d)));
                        }
                    }
                    products[(i * ds + j) * dim + k * ds + l] = out;
                }
            }
        }
    }
    let labels = (0..dr)
        .flat_map(|i| (0..ds).map(move |j| (i, j)))
        .map(|(i, j)| format!("{}⊗{}", r.label(i), s.label(j)))
        .collect();
    FiniteAlgebra::new(
        f,
        labels,
        products,
        r.is_commutative() && s.is_commutative(),
    )
}

/// `R × S` with componentwise products.
pub fn direct_sum(r: &FiniteAlgebra, s: &FiniteAlgebra) -> Result<FiniteAlgebra> {
    check_same_field(r, s)?;
    let (dr, ds) = (r.dim(), s.dim());
    let dim = dr + ds;
    let mut products = vec![Vec::new(); dim * dim];
    for i in 0..dr {
        for k in 0..dr {
            products[i * dim + k] = r.product(i, k).to_vec();
        }
    }
    for j in 0..ds {
        for l in 0..ds {
            products[(dr + j) * dim + dr + l] =
                s.product(j, l).iter().map(|&(m, c)| (dr + m, c)).collect();
        }
    }
    let labels = r
        .labels()
        .iter()
        .map(|l| format!("left.{l}"))
        .chain(s.labels().iter().map(|l| format!("right.{l}")))
        .collect();
    FiniteAlgebra::new(
        r.field(),
        labels,
        products,
        r.is_commutative() && s.is_commutative(),
    )
}

/// Commutative graded algebra on `x, y, z1, z2` in degree one where the
/// `z`'s multiply every generator to zero, truncated above degree 4.
/// Its components have dimensions 4, 3, 4, 5.
pub fn example_2_4_base(field: PrimeField) -> Result<(FiniteAlgebra, GradedView)> {
    let (poly, view) = truncated_polynomial_named(field, &["x", "y", "z1", "z2"], 4, true)?;
    let mut gens = Vec::new();
    for z in ["z1", "z2"] {
        for g in ["x", "y", "z1", "z2"] {
            let zv = poly.element(&[(z, 1)])?;
            let gv = poly.element(&[(g, 1)])?;
            gens.push(poly.mul(&zv, &gv));
        }
    }
    let ideal = ideal_generated(&poly, &gens)?;
    let (q, qview, _) = quotient_graded(&poly, &view, &ideal)?;
    Ok((q, qview))
}

/// [`example_2_4_base`] divided by two independent degree-4 relations drawn
/// pseudo-randomly from `seed` (redrawn until independent). Its components
/// have dimensions 4, 3, 4, 3.
pub fn example_2_4_algebra(field: PrimeField, seed: u64) -> Result<(FiniteAlgebra, GradedView)> {
    let (base, view) = example_2_4_base(field)?;
    let top = view.indices_of_degree(4);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let relations = loop {
        let draw: Vec<Vec<Scalar>> = (0..2)
            .map(|_| {
                let mut v = base.zero();
                for &i in &top {
                    v[i] = rng.gen_range(0..field.modulus());
                }
                v
            })
            .collect();
        if Subspace::from_rows(field, base.dim(), &draw)?.dim() == 2 {
            break draw;
        }
    };
    let ideal = ideal_generated(&base, &relations)?;
    let (q, qview, _) = quotient_graded(&base, &view, &ideal)?;
    Ok((q, qview))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroups::{from_numerical, NumericalPresentation};

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn x_power(alg: &FiniteAlgebra, k: u64) -> Vec<Scalar> {
        alg.element(&[(&power_label("x", k), 1)]).unwrap()
    }

    #[test]
    fn truncated_dims() {
        let (a, v) = truncated_polynomial(gf(5), 3, 3, true).unwrap();
        assert_eq!(a.dim(), 3 + 6 + 10);
        assert_eq!(v.component_dims(), vec![3, 6, 10]);

        let (a, _) = truncated_polynomial(gf(2), 1, 1, true).unwrap();
        assert_eq!(a.dim(), 1);
        assert!(a.product(0, 0).is_empty());

        let (_, v) = truncated_polynomial(gf(3), 1, 6, true).unwrap();
        assert_eq!(v.component_dims(), vec![1; 6]);

        let (a, v) = truncated_polynomial(gf(2), 2, 3, false).unwrap();
        assert_eq!(v.component_dims(), vec![2, 4, 8]);
        assert!(!a.is_commutative());

        assert!(matches!(
            truncated_polynomial(gf(2), 10, 10, true),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn contracted_cyclic_matches_truncated() {
        for n in 1..8 {
            let s = SemigroupWithZero::cyclic_truncated(n).unwrap();
            let c = contracted_algebra(&s, gf(3));
            let (t, _) = truncated_polynomial(gf(3), 1, n, true).unwrap();
            assert_eq!(c, t);
        }
        let trivial = contracted_algebra(&SemigroupWithZero::trivial(), gf(2));
        assert_eq!(trivial.dim(), 0);
    }

    #[test]
    fn subalgebra_of_x2_x3() {
        let (r, _) = truncated_polynomial(gf(2), 1, 10, true).unwrap();
        let (sub, incl) = subalgebra_generated(&r, &[x_power(&r, 2), x_power(&r, 3)]).unwrap();
        assert_eq!(sub.dim(), 9);
        assert_eq!(incl.rows(), 9);
        assert_eq!(sub.label(0), "x^2");

        let all: Vec<Vec<Scalar>> = (0..r.dim()).map(|i| r.basis_vector(i)).collect();
        let (whole, _) = subalgebra_generated(&r, &all).unwrap();
        assert_eq!(whole, r);
    }

    #[test]
    fn subalgebra_of_x4_x5() {
        let (r, _) = truncated_polynomial(gf(3), 1, 24, true).unwrap();
        let (sub, _) = subalgebra_generated(&r, &[x_power(&r, 4), x_power(&r, 5)]).unwrap();
        assert_eq!(sub.dim(), 18);
        let s = from_numerical(&NumericalPresentation::new([4, 5], 24)).unwrap();
        assert_eq!(sub, contracted_algebra(&s, gf(3)));
    }

    #[test]
    fn quotient_of_two_three() {
        let (r, _) = truncated_polynomial(gf(2), 1, 10, true).unwrap();
        let (sub, _) = subalgebra_generated(&r, &[x_power(&r, 2), x_power(&r, 3)]).unwrap();
        let rel = sub.element(&[("x^9", 1), ("x^10", -1)]).unwrap();
        let ideal = ideal_generated(&sub, &[rel]).unwrap();
        let (q, proj) = quotient(&sub, &ideal).unwrap();
        assert_eq!(q.dim(), 8);
        assert_eq!(proj.rows(), 8);
        assert_eq!(proj.cols(), 9);

        let (same, _) = quotient(&sub, &ideal_generated(&sub, &[sub.zero()]).unwrap()).unwrap();
        assert_eq!(same, sub);
    }

    #[test]
    fn quotient_of_four_five() {
        let (r, _) = truncated_polynomial(gf(2), 1, 24, true).unwrap();
        let (sub, _) = subalgebra_generated(&r, &[x_power(&r, 4), x_power(&r, 5)]).unwrap();
        let rel = sub.element(&[("x^13", 1), ("x^14", -1)]).unwrap();
        let ideal = ideal_generated(&sub, &[rel]).unwrap();
        let expected = Subspace::from_rows(
            gf(2),
            sub.dim(),
            &[
                sub.element(&[("x^13", 1), ("x^14", 1)]).unwrap(),
                sub.element(&[("x^17", 1), ("x^18", 1)]).unwrap(),
                sub.element(&[("x^18", 1), ("x^19", 1)]).unwrap(),
                sub.element(&[("x^21", 1), ("x^22", 1)]).unwrap(),
                sub.element(&[("x^22", 1), ("x^23", 1)]).unwrap(),
                sub.element(&[("x^23", 1), ("x^24", 1)]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(ideal, expected);
        let (q, _) = quotient(&sub, &ideal).unwrap();
        assert_eq!(q.dim(), 12);
    }

    #[test]
    fn quotient_rejects_non_ideal() {
        let (r, _) = truncated_polynomial(gf(2), 1, 5, true).unwrap();
        let not_ideal = Subspace::from_rows(gf(2), 5, &[x_power(&r, 2)]).unwrap();
        assert!(matches!(
            quotient(&r, &not_ideal),
            Err(Error::NotAnIdeal(_))
        ));
    }

    #[test]
    fn tensor_and_sum_dims() {
        let (r, _) = truncated_polynomial(gf(2), 1, 4, true).unwrap();
        let (s, _) = truncated_polynomial(gf(2), 1, 3, true).unwrap();
        assert_eq!(tensor_product(&r, &s).unwrap().dim(), 12);
        assert_eq!(direct_sum(&r, &s).unwrap().dim(), 7);
        let (t, _) = truncated_polynomial(gf(3), 1, 3, true).unwrap();
        assert!(matches!(
            tensor_product(&r, &t),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn forbidden_words_small() {
        assert_eq!(forbidden_word_dims(2, 2).unwrap(), vec![3, 7]);
        assert_eq!(forbidden_word_dims(2, 8).unwrap()[2..], [4, 5, 4, 5, 4, 5]);
        let (_, view) = forbidden_word_algebra(gf(2), 2, 6).unwrap();
        assert_eq!(view.component_dims(), forbidden_word_dims(2, 6).unwrap());
    }

    #[test]
    fn example_2_4_dims() {
        let (_, v) = example_2_4_base(gf(5)).unwrap();
        assert_eq!(v.component_dims(), vec![4, 3, 4, 5]);
        for seed in [0, 1, 7, 2012] {
            let (a, v) = example_2_4_algebra(gf(5), seed).unwrap();
            assert_eq!(v.component_dims(), vec![4, 3, 4, 3]);
            assert!(generated_in_degree_one(&a, &v).unwrap());
        }
    }

    #[test]
    fn grading_rejects_incompatible_degrees() {
        let (a, _) = truncated_polynomial(gf(2), 1, 3, true).unwrap();
        assert!(GradedView::new(&a, vec![1, 1, 3]).is_err());
        assert!(GradedView::new(&a, vec![1, 2, 3]).is_ok());
    }

    #[test]
    fn nilpotency() {
        let (a, _) = truncated_polynomial(gf(2), 2, 3, true).unwrap();
        assert_eq!(a.nilpotency_index(), Some(4));
        assert_eq!(
            FiniteAlgebra::zero_algebra(gf(2)).nilpotency_index(),
            Some(1)
        );
    }

    #[test]
    fn rejects_non_associative() {
        // e0*e0 = e1, e0*e1 = e1*e0 = 0, e1*e1 = e0.
        let products = vec![vec![(1, 1)], vec![], vec![], vec![(0, 1)]];
        let err = FiniteAlgebra::new(gf(3), vec!["a".into(), "b".into()], products, true);
        assert!(matches!(err, Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn element_display() {
        let (r, _) = truncated_polynomial(gf(5), 1, 4, true).unwrap();
        let x = AlgebraElement::new(&r, r.element(&[("x", 1), ("x^2", 2)]).unwrap()).unwrap();
        assert_eq!(x.to_string(), "x + 2*x^2");
        assert_eq!(x.pow(4).to_string(), "x^4");
        assert!(x.pow(5).is_zero());
    }
}
