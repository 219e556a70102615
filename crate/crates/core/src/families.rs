//! Instance generators: cyclic groups, products of cyclics, orbit quotients
//! of cyclic groups under negation, and conjugacy-class hypergroups of finite
//! groups.
//!
//! Arbitrary random tensors are never generated — associativity is a
//! measure-zero constraint — so every random trial draws from these
//! guaranteed-valid families.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergroup::{HypergroupTable, MAX_ELEMENTS};

/// A concrete family instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Cyclic(usize),
    ProductOfCyclics(Vec<usize>),
    /// Quotient of `Z_{2N}` by `x ↦ -x`; `N+1` elements.
    OrbitNegation(usize),
    Conjugacy(GroupTable),
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Cyclic(_) => "cyclic",
            Family::ProductOfCyclics(_) => "product",
            Family::OrbitNegation(_) => "orbit",
            Family::Conjugacy(_) => "conjugacy",
        }
    }
}

/// Family selector without parameters, as used in suite configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Cyclic,
    Product,
    Orbit,
    Conjugacy,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 4] = [
        FamilyKind::Cyclic,
        FamilyKind::Product,
        FamilyKind::Orbit,
        FamilyKind::Conjugacy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Cyclic => "cyclic",
            FamilyKind::Product => "product",
            FamilyKind::Orbit => "orbit",
            FamilyKind::Conjugacy => "conjugacy",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "cyclic" => Ok(FamilyKind::Cyclic),
            "product" => Ok(FamilyKind::Product),
            "orbit" => Ok(FamilyKind::Orbit),
            "conjugacy" => Ok(FamilyKind::Conjugacy),
            other => Err(Error::InvalidParam(format!("unknown family `{other}`"))),
        }
    }

    /// Parameters giving an instance with exactly `size` elements.
    ///
    /// `product` factors the size into small cyclic dimensions, `orbit` uses
    /// `N = size - 1`, and `conjugacy` takes the classes of the dihedral
    /// group of order `2(2·size - 3)`, which has `size` of them.
    pub fn instance_of_size(self, size: usize) -> Result<Family> {
        if size == 0 || size > MAX_ELEMENTS {
            return Err(Error::InvalidParam(format!(
                "size {size} outside 1..={MAX_ELEMENTS}"
            )));
        }
        match self {
            FamilyKind::Cyclic => Ok(Family::Cyclic(size)),
            FamilyKind::Product => Ok(Family::ProductOfCyclics(factor_small(size))),
            FamilyKind::Orbit => {
                if size < 2 {
                    return Err(Error::InvalidParam("orbit family needs size >= 2".into()));
                }
                Ok(Family::OrbitNegation(size - 1))
            }
            FamilyKind::Conjugacy => {
                if size < 2 {
                    return Err(Error::InvalidParam(
                        "conjugacy family needs size >= 2".into(),
                    ));
                }
                Ok(Family::Conjugacy(GroupTable::dihedral(2 * size - 3)?))
            }
        }
    }
}

/// Factor `n` into dimensions 4, 3, 2 and leftover odd factors.
fn factor_small(n: usize) -> Vec<usize> {
    let mut dims = Vec::new();
    let mut rest = n;
    for d in [4usize, 3, 2] {
        while rest.is_multiple_of(d) {
            dims.push(d);
            rest /= d;
        }
    }
    let mut p = 5;
    while rest > 1 {
        while rest.is_multiple_of(p) {
            dims.push(p);
            rest /= p;
        }
        p += 2;
    }
    if dims.is_empty() {
        dims.push(1);
    }
    dims.sort_unstable_by(|a, b| b.cmp(a));
    dims
}

pub fn build_family(family: &Family) -> Result<HypergroupTable> {
    match family {
        Family::Cyclic(n) => cyclic_table(*n),
        Family::ProductOfCyclics(dims) => product_table(dims),
        Family::OrbitNegation(big_n) => orbit_negation_table(*big_n),
        Family::Conjugacy(group) => conjugacy_hypergroup(group),
    }
}

fn cyclic_table(n: usize) -> Result<HypergroupTable> {
    if n == 0 {
        return Err(Error::InvalidParam("cyclic order must be positive".into()));
    }
    let mut tensor = vec![0.0; n * n * n];
    for x in 0..n {
        for y in 0..n {
            tensor[(x * n + y) * n + (x + y) % n] = 1.0;
        }
    }
    let involution = (0..n).map(|x| (n - x) % n).collect();
    HypergroupTable::new(n, 0, involution, tensor)
}

fn product_table(dims: &[usize]) -> Result<HypergroupTable> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::InvalidParam("product dimensions must be positive".into()));
    }
    let n: usize = dims.iter().product();
    if n > MAX_ELEMENTS {
        return Err(Error::InvalidParam(format!("product size {n} > {MAX_ELEMENTS}")));
    }
    let add = |a: usize, b: usize| -> usize {
        let (mut a, mut b, mut out, mut stride) = (a, b, 0usize, 1usize);
        for &d in dims.iter().rev() {
            out += ((a + b) % d) * stride;
            stride *= d;
            a /= d;
            b /= d;
        }
        out
    };
    let neg = |a: usize| -> usize {
        let (mut a, mut out, mut stride) = (a, 0usize, 1usize);
        for &d in dims.iter().rev() {
            out += ((d - a % d) % d) * stride;
            stride *= d;
            a /= d;
        }
        out
    };
    let mut tensor = vec![0.0; n * n * n];
    for x in 0..n {
        for y in 0..n {
            tensor[(x * n + y) * n + add(x, y)] = 1.0;
        }
    }
    let involution = (0..n).map(neg).collect();
    HypergroupTable::new(n, 0, involution, tensor)
}

/// Quotient of `Z_{2N}` by negation. Orbits are `{0}`, `{k, 2N-k}` for
/// `0 < k < N`, and `{N}`; the product of two orbits is the pushforward of
/// the convolution of their uniform measures.
fn orbit_negation_table(big_n: usize) -> Result<HypergroupTable> {
    if big_n == 0 {
        return Err(Error::InvalidParam("orbit parameter must be positive".into()));
    }
    let n = big_n + 1;
    if n > MAX_ELEMENTS {
        return Err(Error::InvalidParam(format!("orbit size {n} > {MAX_ELEMENTS}")));
    }
    let m = 2 * big_n;
    let orbit = |x: usize| x.min(m - x);
    let members = |k: usize| -> Vec<usize> {
        if k == 0 || k == big_n {
            vec![k]
        } else {
            vec![k, m - k]
        }
    };
    let mut tensor = vec![0.0; n * n * n];
    for i in 0..n {
        let mi = members(i);
        for j in 0..n {
            let mj = members(j);
            let mass = 1.0 / (mi.len() * mj.len()) as f64;
            for &a in &mi {
                for &b in &mj {
                    tensor[(i * n + j) * n + orbit((a + b) % m)] += mass;
                }
            }
        }
    }
    // negation fixes every orbit
    HypergroupTable::new(n, 0, (0..n).collect(), tensor)
}

/// Multiplication table of a finite group, elements `0..n` with `mul[a·n+b] = a·b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    n: usize,
    identity: usize,
    mul: Vec<usize>,
}

impl GroupTable {
    /// Validates the group axioms; the failing axiom is named in the error.
    pub fn new(n: usize, mul: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("closure", "empty set".into()));
        }
        if mul.len() != n * n {
            return Err(Error::Dimension(format!(
                "multiplication table length {} != {}",
                mul.len(),
                n * n
            )));
        }
        if let Some(i) = mul.iter().position(|v| *v >= n) {
            return Err(Error::InvalidGroup(
                "closure",
                format!("entry {i} out of range"),
            ));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mul[e * n + a] == a && mul[a * n + e] == a))
            .ok_or_else(|| Error::InvalidGroup("identity", "no two-sided identity".into()))?;
        for a in 0..n {
            if !(0..n).any(|b| mul[a * n + b] == identity && mul[b * n + a] == identity) {
                return Err(Error::InvalidGroup("inverse", format!("element {a}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a * n + b] * n + c] != mul[a * n + mul[b * n + c]] {
                        return Err(Error::InvalidGroup(
                            "associativity",
                            format!("({a}·{b})·{c} != {a}·({b}·{c})"),
                        ));
                    }
                }
            }
        }
        Ok(Self { n, identity, mul })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.n)
            .find(|&b| self.mul(a, b) == self.identity && self.mul(b, a) == self.identity)
            .expect("validated group has inverses")
    }

    /// Dihedral group of order `2m`: element `ε·m + a` is `s^ε r^a`, with
    /// `s^ε r^a · s^δ r^b = s^{ε⊕δ} r^{(-1)^δ a + b}`.
    pub fn dihedral(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParam("dihedral parameter must be positive".into()));
        }
        let n = 2 * m;
        let mut mul = vec![0usize; n * n];
        for eps in 0..2usize {
            for a in 0..m {
                for delta in 0..2usize {
                    for b in 0..m {
                        let rot = if delta == 1 { (m - a) % m + b } else { a + b } % m;
                        mul[(eps * m + a) * n + (delta * m + b)] = ((eps + delta) % 2) * m + rot;
                    }
                }
            }
        }
        Self::new(n, mul)
    }

    /// Conjugacy classes, identity class first.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let inverses: Vec<usize> = (0..n).map(|a| self.inverse(a)).collect();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut order: Vec<usize> = (0..n).collect();
        order.swap(0, self.identity);
        for a in order {
            if class_of[a] != usize::MAX {
                continue;
            }
            let idx = classes.len();
            let mut members = Vec::new();
            for (g, &g_inv) in inverses.iter().enumerate() {
                let conj = self.mul(self.mul(g, a), g_inv);
                if class_of[conj] == usize::MAX {
                    class_of[conj] = idx;
                    members.push(conj);
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes
    }
}

/// Conjugacy-class hypergroup: classes convolve as class-averaged products
/// of point measures, `c[i][j][k] = #{(a,b) ∈ C_i×C_j : ab ∈ C_k} / (|C_i||C_j|)`.
pub fn conjugacy_hypergroup(group: &GroupTable) -> Result<HypergroupTable> {
    let classes = group.conjugacy_classes();
    let n = classes.len();
    if n > MAX_ELEMENTS {
        return Err(Error::InvalidParam(format!("class count {n} > {MAX_ELEMENTS}")));
    }
    let mut class_of = vec![0usize; group.n()];
    for (idx, members) in classes.iter().enumerate() {
        for &a in members {
            class_of[a] = idx;
        }
    }
    let mut tensor = vec![0.0; n * n * n];
    for (i, ci) in classes.iter().enumerate() {
        for (j, cj) in classes.iter().enumerate() {
            let mass = 1.0 / (ci.len() * cj.len()) as f64;
            for &a in ci {
                for &b in cj {
                    tensor[(i * n + j) * n + class_of[group.mul(a, b)]] += mass;
                }
            }
        }
    }
    let involution = (0..n)
        .map(|i| class_of[group.inverse(classes[i][0])])
        .collect();
    HypergroupTable::new(n, 0, involution, tensor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergroup::{compute_haar, AXIOM_TOL};

    #[test]
    fn trivial_one_point_family() {
        let table = build_family(&Family::Cyclic(1)).unwrap();
        assert_eq!(table.n(), 1);
        assert!(table.validate(AXIOM_TOL).pass);
    }

    #[test]
    fn all_families_validate() {
        let families = [
            Family::Cyclic(7),
            Family::ProductOfCyclics(vec![4, 3]),
            Family::OrbitNegation(7),
            Family::Conjugacy(GroupTable::dihedral(9).unwrap()),
        ];
        for family in families {
            let table = build_family(&family).unwrap();
            let report = table.validate(AXIOM_TOL);
            assert!(report.pass, "{family:?}: {report:?}");
        }
    }

    #[test]
    fn orbit_negation_two_matches_hand_table() {
        let table = build_family(&Family::OrbitNegation(2)).unwrap();
        assert_eq!(table.c(1, 1, 0), 0.5);
        assert_eq!(table.c(1, 1, 2), 0.5);
        assert_eq!(table.c(1, 2, 1), 1.0);
        assert_eq!(table.c(2, 2, 0), 1.0);
    }

    #[test]
    fn symmetric_group_classes_and_weights() {
        // S_3 in the standard enumeration e, (12), (13), (23), (123), (132):
        // classes of sizes 1, 3, 2, Haar weights [1, 3, 2]. The class
        // structure is recomputed by brute force over all 36 products as an
        // oracle for the tensor.
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 0, 2],
            [2, 1, 0],
            [0, 2, 1],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let compose = |a: &[usize; 3], b: &[usize; 3]| [a[b[0]], a[b[1]], a[b[2]]];
        let index_of = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let mut mul = vec![0usize; 36];
        for (i, a) in perms.iter().enumerate() {
            for (j, b) in perms.iter().enumerate() {
                mul[i * 6 + j] = index_of(compose(a, b));
            }
        }
        let group = GroupTable::new(6, mul).unwrap();
        let classes = group.conjugacy_classes();
        let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        let table = conjugacy_hypergroup(&group).unwrap();
        assert!(table.validate(AXIOM_TOL).pass);
        let haar = compute_haar(&table).unwrap();
        assert_eq!(haar.as_slice(), &[1.0, 3.0, 2.0]);

        let mut class_of = [0usize; 6];
        for (idx, members) in classes.iter().enumerate() {
            for &a in members {
                class_of[a] = idx;
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                let mut expected = [0.0f64; 3];
                for &a in &classes[i] {
                    for &b in &classes[j] {
                        expected[class_of[group.mul(a, b)]] +=
                            1.0 / (classes[i].len() * classes[j].len()) as f64;
                    }
                }
                for (k, &mass) in expected.iter().enumerate() {
                    assert!((table.c(i, j, k) - mass).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn dihedral_class_counts() {
        for (m, expected) in [(3usize, 3usize), (5, 4), (29, 16), (4, 5), (6, 6)] {
            let group = GroupTable::dihedral(m).unwrap();
            let classes = group.conjugacy_classes();
            let count = if m % 2 == 1 { (m + 3) / 2 } else { m / 2 + 3 };
            assert_eq!(classes.len(), count);
            assert_eq!(classes.len(), expected);
        }
    }

    #[test]
    fn invalid_group_is_rejected_with_axiom_name() {
        // left-zero semigroup: a·b = a has no identity
        let mul = vec![0, 0, 1, 1];
        match GroupTable::new(2, mul) {
            Err(Error::InvalidGroup(axiom, _)) => assert_eq!(axiom, "identity"),
            other => panic!("expected identity failure, got {other:?}"),
        }
        // broken associativity: doctored table with valid identity row
        let mul = vec![0, 1, 2, 1, 2, 0, 2, 1, 0];
        match GroupTable::new(3, mul) {
            Err(Error::InvalidGroup(axiom, _)) => {
                assert!(axiom == "associativity" || axiom == "inverse")
            }
            other => panic!("expected group failure, got {other:?}"),
        }
    }

    #[test]
    fn size_mapping_hits_requested_sizes() {
        for kind in FamilyKind::ALL {
            for size in [2usize, 3, 4, 16, 64] {
                let family = kind.instance_of_size(size).unwrap();
                let table = build_family(&family).unwrap();
                assert_eq!(table.n(), size, "{kind:?} at {size}");
            }
        }
    }

    #[test]
    fn factorization_products() {
        for n in [4usize, 16, 64, 12, 30, 7] {
            assert_eq!(factor_small(n).iter().product::<usize>(), n);
        }
    }
}
