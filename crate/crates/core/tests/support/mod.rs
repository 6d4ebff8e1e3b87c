//! Brute-force oracles shared by the integration and acceptance tests.
//! Nothing here calls into the library's closure, elimination or counting code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use eggert::semigroups::{NumericalPresentation, Relation};

/// Members of `<generators>` up to `bound`, by trying every sum.
pub fn members_by_sums(generators: &[u64], bound: u64) -> Vec<u64> {
    let mut reached = BTreeSet::new();
    let mut frontier: Vec<u64> = generators.iter().copied().filter(|&g| g <= bound).collect();
    while let Some(v) = frontier.pop() {
        if reached.insert(v) {
            for &g in generators {
                if v + g <= bound {
                    frontier.push(v + g);
                }
            }
        }
    }
    reached.into_iter().collect()
}

/// Calls `f` on every set partition of `0..n`, as a block index per point.
fn for_each_partition(n: usize, f: &mut impl FnMut(&[usize])) {
    fn go(i: usize, n: usize, blocks: usize, a: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if i == n {
            f(a);
            return;
        }
        for b in 0..=blocks {
            a[i] = b;
            go(i + 1, n, blocks.max(b + 1), a, f);
        }
    }
    let mut a = vec![0; n];
    if n == 0 {
        f(&a);
    } else {
        go(1, n, 1, &mut a, f);
    }
}

/// Classes of the least congruence containing the relations, found by
/// intersecting every congruence on `{∞} ∪ members`.
///
/// Format matches `NumericalQuotient::classes`: index 0 lists the members
/// sent to `∞`, the rest are ordered by their least member.
pub fn brute_min_congruence(pres: &NumericalPresentation) -> Vec<Vec<u64>> {
    let members = members_by_sums(&pres.generators, pres.bound);
    assert!(members.len() <= 10, "brute force is for tiny presentations");
    let nodes = members.len() + 1;
    let node = |v: u64| members.iter().position(|&m| m == v).map_or(0, |t| t + 1);
    let value = |i: usize| (i > 0).then(|| members[i - 1]);
    let shift = |i: usize, s: u64| match value(i) {
        Some(v) if v + s <= pres.bound => node(v + s),
        _ => 0,
    };
    let pairs: Vec<(usize, usize)> = pres
        .relations
        .iter()
        .map(|r| match *r {
            Relation::Identify(a, b) => (node(a), node(b)),
            Relation::CollapseToZero(a) => (node(a), 0),
        })
        .collect();

    // related[i][j] stays true only if every congruence relates i and j.
    let mut related = vec![vec![true; nodes]; nodes];
    let mut found = 0usize;
    for_each_partition(nodes, &mut |block: &[usize]| {
        if pairs.iter().any(|&(a, b)| block[a] != block[b]) {
            return;
        }
        for i in 0..nodes {
            for j in i + 1..nodes {
                if block[i] == block[j]
                    && members
                        .iter()
                        .any(|&s| block[shift(i, s)] != block[shift(j, s)])
                {
                    return;
                }
            }
        }
        found += 1;
        for i in 0..nodes {
            for j in 0..nodes {
                related[i][j] &= block[i] == block[j];
            }
        }
    });
    assert!(found > 0, "the all-in-one partition is always a congruence");

    let mut classes = vec![Vec::new()];
    let mut seen = vec![false; nodes];
    for i in 1..nodes {
        if related[i][0] {
            classes[0].push(members[i - 1]);
            seen[i] = true;
        }
    }
    for i in 1..nodes {
        if seen[i] {
            continue;
        }
        let class: Vec<u64> = (i..nodes)
            .filter(|&j| related[i][j])
            .map(|j| members[j - 1])
            .collect();
        for j in i..nodes {
            if related[i][j] {
                seen[j] = true;
            }
        }
        classes.push(class);
    }
    classes
}

/// Words of length `k` over `x, y, z_1..z_{d-1}` with no `xx`, no `yy`,
/// and `xy` inside every window of length three.
pub fn forbidden_word_count(d: usize, k: usize) -> usize {
    let mut letters = vec!["x".to_string(), "y".to_string()];
    letters.extend((1..d).map(|i| format!("z{i}")));
    let mut count = 0;
    let total = letters.len().pow(k as u32);
    for mut code in 0..total {
        let mut w = Vec::with_capacity(k);
        for _ in 0..k {
            w.push(letters[code % letters.len()].as_str());
            code /= letters.len();
        }
        let bad_pair = w.windows(2).any(|p| p == ["x", "x"] || p == ["y", "y"]);
        let bad_triple = w
            .windows(3)
            .any(|t| !(t[0..2] == ["x", "y"] || t[1..3] == ["x", "y"]));
        if !bad_pair && !bad_triple {
            count += 1;
        }
    }
    count
}

/// Monomials of degree `k` in `vars` commuting variables.
pub fn stars_and_bars(vars: usize, k: usize) -> usize {
    if vars == 0 {
        return usize::from(k == 0);
    }
    binomial(vars + k - 1, k)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Inverse of `a` modulo `p` by the extended Euclidean algorithm.
pub fn ext_euclid_inverse(a: u64, p: u64) -> Option<u64> {
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(p as i128) as u64)
}

/// Rank over GF(p) by plain Gaussian elimination on copied rows.
pub fn naive_rank(rows: &[Vec<u64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x % p).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = ext_euclid_inverse(m[rank][c], p).unwrap();
        for i in 0..m.len() {
            if i != rank && m[i][c] != 0 {
                let f = m[i][c] * inv % p;
                let pivot_row = m[rank].clone();
                for (x, &y) in m[i].iter_mut().zip(&pivot_row) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Both sides of `sum_S (-1)^|S| (sum_{i in S} a_i)^n = (-1)^n n! a_1...a_n`
/// at every point of `GF(p)^n`; returns the first point where they differ.
pub fn alternating_identity_counterexample(n: usize, p: u64) -> Option<Vec<u64>> {
    let powmod = |b: u64, e: usize| (0..e).fold(1u64, |acc, _| acc * b % p);
    let fact = (1..=n as u64).fold(1u64, |acc, k| acc * k % p);
    let points = (p as usize).pow(n as u32);
    for mut code in 0..points {
        let a: Vec<u64> = (0..n)
            .map(|_| {
                let v = code as u64 % p;
                code /= p as usize;
                v
            })
            .collect();
        let mut lhs = 0u64;
        for mask in 0usize..1 << n {
            let s = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| a[i])
                .sum::<u64>()
                % p;
            let term = powmod(s, n);
            lhs = if mask.count_ones() % 2 == 1 {
                (lhs + p - term) % p
            } else {
                (lhs + term) % p
            };
        }
        let prod = a.iter().fold(1u64, |acc, &x| acc * x % p);
        let mut rhs = fact * prod % p;
        if n % 2 == 1 {
            rhs = (p - rhs) % p;
        }
        if lhs != rhs {
            return Some(a);
        }
    }
    None
}
