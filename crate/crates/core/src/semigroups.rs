//! Finite commutative semigroups with zero, stored as multiplication tables.
//!
//! Element `0` of every table is the zero. Numerical presentations (additive
//! subsemigroups of the positive integers truncated above a bound, with
//! identifications imposed) are turned into tables by a union-find congruence
//! closure over translates.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of an element in a semigroup table.
pub type Elem = usize;

/// The zero element's index in every [`SemigroupWithZero`].
pub const ZERO: Elem = 0;

/// Default cap on the bound of a [`NumericalPresentation`].
pub const DEFAULT_BOUND_CAP: u64 = 10_000;

/// `x`, `x^2`, ... in the label convention shared with the algebras.
pub fn power_label(var: &str, k: u64) -> String {
    if k == 1 {
        var.to_string()
    } else {
        format!("{var}^{k}")
    }
}

fn check_table(size: usize, table: &[Elem]) -> Result<()> {
    if table.len() != size * size {
        return Err(Error::InvalidTable(format!(
            "table has {} entries, expected {}",
            table.len(),
            size * size
        )));
    }
    if let Some(&bad) = table.iter().find(|&&v| v >= size) {
        return Err(Error::InvalidTable(format!("entry {bad} out of range")));
    }
    let at = |i: usize, j: usize| table[i * size + j];
    for i in 0..size {
        for j in i + 1..size {
            if at(i, j) != at(j, i) {
                return Err(Error::InvalidTable(format!("{i}*{j} != {j}*{i}")));
            }
        }
    }
    for i in 0..size {
        for j in 0..size {
            let ij = at(i, j);
            for k in 0..size {
                if at(ij, k) != at(i, at(j, k)) {
                    return Err(Error::InvalidTable(format!(
                        "({i}*{j})*{k} != {i}*({j}*{k})"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// A finite commutative semigroup without a distinguished zero (used for the
/// group factors of product constructions).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semigroup {
    size: usize,
    table: Vec<Elem>,
    labels: Vec<String>,
}

impl Semigroup {
    pub fn from_table(size: usize, table: Vec<Elem>, labels: Vec<String>) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidTable("empty semigroup".into()));
        }
        if labels.len() != size {
            return Err(Error::InvalidTable("label count differs from size".into()));
        }
        check_table(size, &table)?;
        Ok(Self {
            size,
            table,
            labels,
        })
    }

    /// The cyclic group `{1, y, ..., y^(order-1)}`.
    pub fn cyclic_group(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidTable("group order must be positive".into()));
        }
        let table = (0..order * order)
            .map(|ij| (ij / order + ij % order) % order)
            .collect();
        let labels = (0..order)
            .map(|k| {
                if k == 0 {
                    "1".to_string()
                } else {
                    power_label("y", k as u64)
                }
            })
            .collect();
        Self::from_table(order, table, labels)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.size + b]
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.labels[a]
    }
}

/// A finite commutative semigroup with absorbing zero at index 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupWithZero {
    size: usize,
    table: Vec<Elem>,
    labels: Vec<String>,
}

impl SemigroupWithZero {
    /// Validates absorption, commutativity and associativity exhaustively.
    pub fn from_table(size: usize, table: Vec<Elem>, labels: Vec<String>) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidTable(
                "a semigroup with zero has at least one element".into(),
            ));
        }
        if labels.len() != size {
            return Err(Error::InvalidTable("label count differs from size".into()));
        }
        check_table(size, &table)?;
        for i in 0..size {
            if table[i] != ZERO {
                return Err(Error::InvalidTable(format!("0*{i} is not zero")));
            }
        }
        Ok(Self {
            size,
            table,
            labels,
        })
    }

    /// The one-element semigroup `{0}`.
    pub fn trivial() -> Self {
        Self {
            size: 1,
            table: vec![ZERO],
            labels: vec!["0".into()],
        }
    }

    /// `{1, 2, ..., N, ∞}` under addition, written multiplicatively as
    /// `x, ..., x^N, 0`; element `i` is `x^i`.
    pub fn cyclic_truncated(bound: usize) -> Result<Self> {
        if bound == 0 {
            return Err(Error::InvalidPresentation(
                "bound must be at least 1".into(),
            ));
        }
        let size = bound + 1;
        let mut table = vec![ZERO; size * size];
        for i in 1..size {
            for j in 1..size {
                if i + j <= bound {
                    table[i * size + j] = i + j;
                }
            }
        }
        let labels = std::iter::once("0".to_string())
            .chain((1..=bound as u64).map(|k| power_label("x", k)))
            .collect();
        Self::from_table(size, table, labels)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of nonzero elements.
    pub fn card_nonzero(&self) -> usize {
        self.size - 1
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.size + b]
    }

    pub fn pow(&self, a: Elem, n: u64) -> Elem {
        assert!(n >= 1, "semigroup powers start at 1");
        let mut acc = a;
        let mut base = a;
        let mut e = n - 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn find_label(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.size
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> {
        1..self.size
    }

    pub fn whole(&self) -> ElementSubset<'_> {
        ElementSubset::new(self, self.elements()).expect("all indices are in range")
    }

    /// Least `n` with `S^n = {0}`, or `None` if the powers stabilise above zero.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let whole = self.whole();
        let mut current: BTreeSet<Elem> = whole.members.clone();
        let mut n = 1;
        loop {
            if current.iter().all(|&e| e == ZERO) {
                return Some(n);
            }
            let next: BTreeSet<Elem> = current
                .iter()
                .flat_map(|&a| self.elements().map(move |b| (a, b)))
                .map(|(a, b)| self.mul(a, b))
                .collect();
            if next == current {
                return None;
            }
            current = next;
            n += 1;
        }
    }

    /// `n * card(S^(n) - {0}) - card(S - {0})`.
    pub fn deficit(&self, n: u64) -> i64 {
        let image = self.whole().power_subset(n).card_nonzero();
        n as i64 * image as i64 - self.card_nonzero() as i64
    }

    /// Product of two semigroups with zero, with `{0}×T ∪ S×{0}` fused into
    /// a single zero.
    pub fn direct_product(&self, other: &SemigroupWithZero) -> Result<SemigroupWithZero> {
        let pairs: Vec<(Elem, Elem)> = self
            .nonzero_elements()
            .flat_map(|s| other.nonzero_elements().map(move |t| (s, t)))
            .collect();
        let index = |s: Elem, t: Elem| -> Elem {
            if s == ZERO || t == ZERO {
                ZERO
            } else {
                1 + (s - 1) * other.card_nonzero() + (t - 1)
            }
        };
        let size = pairs.len() + 1;
        let mut table = vec![ZERO; size * size];
        for (a, &(s1, t1)) in pairs.iter().enumerate() {
            for (b, &(s2, t2)) in pairs.iter().enumerate() {
                table[(a + 1) * size + b + 1] = index(self.mul(s1, s2), other.mul(t1, t2));
            }
        }
        let labels = std::iter::once("0".to_string())
            .chain(
                pairs
                    .iter()
                    .map(|&(s, t)| format!("({},{})", self.label(s), other.label(t))),
            )
            .collect();
        Self::from_table(size, table, labels)
    }

    /// `S × G` for a zero-free `G`, with the ideal `{0} × G` identified to a
    /// single zero.
    pub fn product_with_group(&self, group: &Semigroup) -> Result<SemigroupWithZero> {
        let g = group.size();
        let pairs: Vec<(Elem, Elem)> = self
            .nonzero_elements()
            .flat_map(|s| (0..g).map(move |h| (s, h)))
            .collect();
        let index = |s: Elem, h: Elem| -> Elem {
            if s == ZERO {
                ZERO
            } else {
                1 + (s - 1) * g + h
            }
        };
        let size = pairs.len() + 1;
        let mut table = vec![ZERO; size * size];
        for (a, &(s1, h1)) in pairs.iter().enumerate() {
            for (b, &(s2, h2)) in pairs.iter().enumerate() {
                table[(a + 1) * size + b + 1] = index(self.mul(s1, s2), group.mul(h1, h2));
            }
        }
        let labels = std::iter::once("0".to_string())
            .chain(pairs.iter().map(|&(s, h)| {
                if h == 0 {
                    self.label(s).to_string()
                } else {
                    format!("{}{}", self.label(s), group.label(h))
                }
            }))
            .collect();
        Self::from_table(size, table, labels)
    }

    /// `G ∪ {0}` for a zero-free `G`.
    pub fn adjoin_zero(group: &Semigroup) -> Result<SemigroupWithZero> {
        let size = group.size() + 1;
        let mut table = vec![ZERO; size * size];
        for a in 0..group.size() {
            for b in 0..group.size() {
                table[(a + 1) * size + b + 1] = group.mul(a, b) + 1;
            }
        }
        let labels = std::iter::once("0".to_string())
            .chain((0..group.size()).map(|a| group.label(a).to_string()))
            .collect();
        Self::from_table(size, table, labels)
    }

    /// Collapse an ideal to the zero element.
    pub fn rees_quotient(&self, ideal: &ElementSubset<'_>) -> Result<SemigroupWithZero> {
        // Zero belongs to every ideal whether listed or not.
        for &i in &ideal.members {
            for s in self.elements() {
                let prod = self.mul(i, s);
                if prod != ZERO && !ideal.members.contains(&prod) {
                    return Err(Error::NotAnIdeal(format!(
                        "{} * {} leaves the subset",
                        self.label(i),
                        self.label(s)
                    )));
                }
            }
        }
        if ideal.members.is_empty() {
            return Err(Error::NotAnIdeal("empty subset".into()));
        }
        let kept: Vec<Elem> = self
            .nonzero_elements()
            .filter(|e| !ideal.members.contains(e))
            .collect();
        let mut new_index = vec![ZERO; self.size];
        for (t, &e) in kept.iter().enumerate() {
            new_index[e] = t + 1;
        }
        let size = kept.len() + 1;
        let mut table = vec![ZERO; size * size];
        for (a, &e) in kept.iter().enumerate() {
            for (b, &f) in kept.iter().enumerate() {
                table[(a + 1) * size + b + 1] = new_index[self.mul(e, f)];
            }
        }
        let labels = std::iter::once("0".to_string())
            .chain(kept.iter().map(|&e| self.label(e).to_string()))
            .collect();
        Self::from_table(size, table, labels)
    }
}

/// A subset `X` of a semigroup with zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementSubset<'a> {
    parent: &'a SemigroupWithZero,
    members: BTreeSet<Elem>,
}

impl<'a> ElementSubset<'a> {
    pub fn new(
        parent: &'a SemigroupWithZero,
        members: impl IntoIterator<Item = Elem>,
    ) -> Result<Self> {
        let members: BTreeSet<Elem> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&m| m >= parent.size()) {
            return Err(Error::InvalidTable(format!("element {bad} out of range")));
        }
        Ok(Self { parent, members })
    }

    pub fn from_labels(parent: &'a SemigroupWithZero, labels: &[&str]) -> Result<Self> {
        let members = labels
            .iter()
            .map(|l| {
                parent
                    .find_label(l)
                    .ok_or_else(|| Error::UnknownLabel(l.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parent, members)
    }

    pub fn parent(&self) -> &'a SemigroupWithZero {
        self.parent
    }

    pub fn members(&self) -> &BTreeSet<Elem> {
        &self.members
    }

    pub fn card(&self) -> usize {
        self.members.len()
    }

    /// `card(X - {0})`.
    pub fn card_nonzero(&self) -> usize {
        self.members.iter().filter(|&&m| m != ZERO).count()
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.members.contains(&e)
    }

    /// `X^(n)`: the set of n-th powers of members.
    pub fn power_subset(&self, n: u64) -> ElementSubset<'a> {
        let members = self
            .members
            .iter()
            .map(|&x| self.parent.pow(x, n))
            .collect();
        ElementSubset {
            parent: self.parent,
            members,
        }
    }

    /// `X^i`: the set of all i-fold products of members.
    pub fn product_subset(&self, i: usize) -> ElementSubset<'a> {
        assert!(i >= 1, "product sets start at X^1");
        let mut current = self.members.clone();
        for _ in 1..i {
            current = current
                .iter()
                .flat_map(|&a| self.members.iter().map(move |&b| (a, b)))
                .map(|(a, b)| self.parent.mul(a, b))
                .collect();
        }
        ElementSubset {
            parent: self.parent,
            members: current,
        }
    }

    pub fn labels(&self) -> Vec<&'a str> {
        self.members.iter().map(|&m| self.parent.label(m)).collect()
    }
}

/// An imposed relation on a numerical semigroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// `a = b`.
    Identify(u64, u64),
    /// `a = ∞`.
    #[serde(rename = "collapse")]
    CollapseToZero(u64),
}

/// Generators, truncation bound and relations of a numerical semigroup with
/// zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NumericalPresentation {
    pub generators: Vec<u64>,
    pub bound: u64,
    #[serde(default)]
    pub relations: Vec<Relation>,
}

impl NumericalPresentation {
    pub fn new(generators: impl Into<Vec<u64>>, bound: u64) -> Self {
        Self {
            generators: generators.into(),
            bound,
            relations: Vec::new(),
        }
    }

    pub fn with_relation(mut self, r: Relation) -> Self {
        self.relations.push(r);
        self
    }

    /// Members of the generated subsemigroup that are `<= bound`, ascending.
    pub fn members(&self) -> Vec<u64> {
        let n = self.bound as usize;
        let mut member = vec![false; n + 1];
        for k in 1..=n {
            member[k] = self
                .generators
                .iter()
                .any(|&g| g as usize == k || (g as usize) < k && member[k - g as usize]);
        }
        (1..=n as u64).filter(|&k| member[k as usize]).collect()
    }

    pub fn validate(&self, bound_cap: u64) -> Result<()> {
        if self.generators.is_empty() {
            return Err(Error::InvalidPresentation("no generators".into()));
        }
        if self.generators.contains(&0) {
            return Err(Error::InvalidPresentation(
                "generators must be positive".into(),
            ));
        }
        if self.bound == 0 {
            return Err(Error::InvalidPresentation("bound must be positive".into()));
        }
        if self.bound > bound_cap {
            return Err(Error::CapExceeded {
                what: "numerical bound",
                needed: self.bound as u128,
                cap: bound_cap as u128,
            });
        }
        let members: BTreeSet<u64> = self.members().into_iter().collect();
        let check = |a: u64| {
            if members.contains(&a) {
                Ok(())
            } else {
                Err(Error::InvalidPresentation(format!(
                    "{a} is not in the subsemigroup generated by {:?} up to {}",
                    self.generators, self.bound
                )))
            }
        };
        for r in &self.relations {
            match *r {
                Relation::Identify(a, b) => {
                    check(a)?;
                    check(b)?;
                }
                Relation::CollapseToZero(a) => check(a)?,
            }
        }
        Ok(())
    }
}

/// A numerical quotient together with the integers making up each class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalQuotient {
    pub semigroup: SemigroupWithZero,
    /// `classes[e]` lists the integers in element `e`; `classes[0]` holds the
    /// members collapsed into zero (integers above the bound are implicit).
    pub classes: Vec<Vec<u64>>,
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` if two classes were merged.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// Congruence closure of a numerical presentation, with the default bound cap.
pub fn from_numerical(pres: &NumericalPresentation) -> Result<SemigroupWithZero> {
    Ok(numerical_quotient(pres, DEFAULT_BOUND_CAP)?.semigroup)
}

/// Builds the quotient of the truncated numerical semigroup by the smallest
/// congruence containing the relations.
///
/// Node 0 is `∞`; node `t > 0` is the `t`-th member. Every merged pair is
/// re-enqueued and translated by every member until nothing new merges.
pub fn numerical_quotient(
    pres: &NumericalPresentation,
    bound_cap: u64,
) -> Result<NumericalQuotient> {
    pres.validate(bound_cap)?;
    let members = pres.members();
    let bound = pres.bound;
    let mut node_of = vec![0usize; bound as usize + 1];
    for (t, &m) in members.iter().enumerate() {
        node_of[m as usize] = t + 1;
    }
    let value = |node: usize| -> Option<u64> { (node > 0).then(|| members[node - 1]) };
    let shift = |node: usize, s: u64| -> usize {
        match value(node) {
            Some(v) if v + s <= bound => node_of[(v + s) as usize],
            _ => 0,
        }
    };

    let mut uf = UnionFind::new(members.len() + 1);
    let mut queue = VecDeque::new();
    for r in &pres.relations {
        let (a, b) = match *r {
            Relation::Identify(a, b) => (node_of[a as usize], node_of[b as usize]),
            Relation::CollapseToZero(a) => (node_of[a as usize], 0),
        };
        if uf.union(a, b) {
            queue.push_back((a, b));
        }
    }
    while let Some((a, b)) = queue.pop_front() {
        for &s in &members {
            let (x, y) = (shift(a, s), shift(b, s));
            if uf.union(x, y) {
                queue.push_back((x, y));
            }
        }
    }

    // Zero class first, then the rest ordered by their least integer.
    let zero_root = uf.find(0);
    let mut class_of_root = std::collections::HashMap::new();
    let mut classes: Vec<Vec<u64>> = vec![Vec::new()];
    let mut elem_of_node = vec![ZERO; members.len() + 1];
    for (t, &m) in members.iter().enumerate() {
        let node = t + 1;
        let root = uf.find(node);
        let e = if root == zero_root {
            ZERO
        } else {
            *class_of_root.entry(root).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            })
        };
        classes[e].push(m);
        elem_of_node[node] = e;
    }

    let size = classes.len();
    let mut table = vec![ZERO; size * size];
    for a in 1..size {
        for b in 1..size {
            let sum = classes[a][0] + classes[b][0];
            if sum <= bound {
                table[a * size + b] = elem_of_node[node_of[sum as usize]];
            }
        }
    }
    let labels = classes
        .iter()
        .enumerate()
        .map(|(e, c)| {
            if e == ZERO {
                "0".to_string()
            } else {
                power_label("x", c[0])
            }
        })
        .collect();
    let semigroup = SemigroupWithZero::from_table(size, table, labels)?;
    Ok(NumericalQuotient { semigroup, classes })
}

/// Direct product of `{x, ..., x^p, 0}` with a cyclic group of order `i`,
/// `{0} × G` fused to zero, and `X = {x} × G`.
pub fn example_4_1(p: usize, i: usize) -> Result<(SemigroupWithZero, BTreeSet<Elem>)> {
    let nil = SemigroupWithZero::cyclic_truncated(p)?;
    let s = nil.product_with_group(&Semigroup::cyclic_group(i)?)?;
    // Elements (x, y^h) sit at indices 1..=i.
    let x: BTreeSet<Elem> = (1..=i).collect();
    Ok((s, x))
}

/// The semigroup on `x, y, z_1, ..., z_{p-1}` where each `z_k` annihilates
/// every generator, made finite by killing monomials in `x, y` of degree
/// above `max_degree`. Returns the semigroup and the generating set `X`.
pub fn example_4_2(p: usize, max_degree: usize) -> Result<(SemigroupWithZero, BTreeSet<Elem>)> {
    if p < 2 || max_degree == 0 {
        return Err(Error::InvalidPresentation(
            "need p >= 2 and a positive degree".into(),
        ));
    }
    // Monomials x^a y^b with 1 <= a+b <= max_degree, ordered by degree then a desc.
    let monomials: Vec<(usize, usize)> = (1..=max_degree)
        .flat_map(|d| (0..=d).rev().map(move |a| (a, d - a)))
        .collect();
    let mono_index = |a: usize, b: usize| -> Elem {
        if a + b > max_degree {
            return ZERO;
        }
        let d = a + b;
        // Degrees below d contribute sum_{k<d} (k+1) entries.
        let before = (d * (d + 1)) / 2 - 1;
        1 + before + (d - a)
    };
    let zs = p - 1;
    let size = 1 + monomials.len() + zs;
    let mut table = vec![ZERO; size * size];
    for (s, &(a1, b1)) in monomials.iter().enumerate() {
        for (t, &(a2, b2)) in monomials.iter().enumerate() {
            table[(s + 1) * size + t + 1] = mono_index(a1 + a2, b1 + b2);
        }
    }
    let mut labels = vec!["0".to_string()];
    labels.extend(monomials.iter().map(|&(a, b)| match (a, b) {
        (a, 0) => power_label("x", a as u64),
        (0, b) => power_label("y", b as u64),
        (a, b) => format!(
            "{}{}",
            power_label("x", a as u64),
            power_label("y", b as u64)
        ),
    }));
    labels.extend((1..=zs).map(|k| format!("z{k}")));
    let s = SemigroupWithZero::from_table(size, table, labels)?;
    let mut x: BTreeSet<Elem> = [mono_index(1, 0), mono_index(0, 1)].into_iter().collect();
    x.extend(1 + monomials.len()..size);
    Ok((s, x))
}

/// The [`example_4_1`] construction with exponent `n > 2` in place of the
/// prime and a prime `p < n`, `p ∤ n`, as the group order.
pub fn example_4_3(n: usize, p: usize) -> Result<(SemigroupWithZero, BTreeSet<Elem>)> {
    if n <= 2 || p >= n || n.is_multiple_of(p) {
        return Err(Error::InvalidPresentation(format!(
            "need n > 2 and p < n with p not dividing n (got n={n}, p={p})"
        )));
    }
    example_4_1(n, p)
}
