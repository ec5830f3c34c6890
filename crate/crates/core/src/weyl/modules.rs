//! Orbits of the even hyperoctahedral group on pairs, the permutation
//! module `F(M)` and its products.

use num_rational::Rational64;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::perm::{element_at, elements, generators_plus, group_order, position, SignedPerm};
use super::WeylError;

/// Largest group enumerated exactly; larger groups are sampled.
pub const EXACT_LIMIT: u128 = 1_000_000;
pub const DEFAULT_SAMPLES: usize = 200_000;

#[derive(Clone, Debug, Serialize)]
pub struct PairOrbits {
    pub g: usize,
    /// Orbits, each sorted, listed by their least pair.
    pub orbits: Vec<Vec<(i32, i32)>>,
    pub warning: Option<String>,
}

impl PairOrbits {
    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Orbits of `W⁺_2g` on `M × M` by union-find over the generators.
pub fn orbits_on_pairs(g: usize) -> Result<PairOrbits, WeylError> {
    if g < 2 {
        return Err(WeylError::Unsupported { g, min: 3 });
    }
    let n = 2 * g;
    let idx = |i: i32, j: i32| position(g, i) * n + position(g, j);
    let mut parent: Vec<usize> = (0..n * n).collect();
    for s in generators_plus(g) {
        for a in 0..n {
            for b in 0..n {
                let (i, j) = (element_at(g, a), element_at(g, b));
                let x = find(&mut parent, idx(i, j));
                let y = find(&mut parent, idx(s.apply(i), s.apply(j)));
                if x != y {
                    parent[x.max(y)] = x.min(y);
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<(i32, i32)>> = Default::default();
    for a in 0..n {
        for b in 0..n {
            let r = find(&mut parent, a * n + b);
            groups.entry(r).or_default().push((element_at(g, a), element_at(g, b)));
        }
    }
    let mut orbits: Vec<Vec<(i32, i32)>> = groups.into_values().collect();
    for o in &mut orbits {
        o.sort();
    }
    orbits.sort();
    let warning = (g < 3).then(|| {
        format!(
            "g = {g}: the even group is too small to be transitive off the diagonals ({} orbits)",
            orbits.len()
        )
    });
    Ok(PairOrbits { g, orbits, warning })
}

/// Average of `fix` and `fix²` over a group, exact or sampled.
#[derive(Clone, Debug, Serialize)]
pub struct FixedPointMoments {
    pub group_order: u128,
    pub exact: bool,
    pub samples: usize,
    pub mean_fix: f64,
    pub mean_fix_sq: f64,
    /// Standard error of `mean_fix_sq` (zero when exact).
    pub std_error: f64,
    /// Exact averages when the group was enumerated.
    #[serde(skip)]
    pub exact_values: Option<(Rational64, Rational64)>,
}

pub fn fixed_point_moments(g: usize, seed: u64, samples: usize) -> FixedPointMoments {
    let order = group_order(g, true);
    if order <= EXACT_LIMIT {
        let (mut s1, mut s2) = (0i64, 0i64);
        for s in elements(g, true) {
            let f = s.fixed_points() as i64;
            s1 += f;
            s2 += f * f;
        }
        let o = order as i64;
        let (m1, m2) = (Rational64::new(s1, o), Rational64::new(s2, o));
        let to_f = |r: Rational64| *r.numer() as f64 / *r.denom() as f64;
        return FixedPointMoments {
            group_order: order,
            exact: true,
            samples: order as usize,
            mean_fix: to_f(m1),
            mean_fix_sq: to_f(m2),
            std_error: 0.0,
            exact_values: Some((m1, m2)),
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut s1, mut s2, mut s4) = (0f64, 0f64, 0f64);
    for _ in 0..samples {
        let f = SignedPerm::random(g, true, &mut rng).fixed_points() as f64;
        s1 += f;
        s2 += f * f;
        s4 += f * f * f * f;
    }
    let n = samples as f64;
    let m2 = s2 / n;
    let var = (s4 / n - m2 * m2).max(0.0);
    FixedPointMoments {
        group_order: order,
        exact: false,
        samples,
        mean_fix: s1 / n,
        mean_fix_sq: m2,
        std_error: (var / n).sqrt(),
        exact_values: None,
    }
}

pub type RatMatrix = Vec<Vec<Rational64>>;

#[derive(Clone, Debug, Serialize)]
pub struct Summand {
    pub name: String,
    pub dim: usize,
    #[serde(skip)]
    pub projection: RatMatrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleDecomposition {
    pub g: usize,
    pub summands: Vec<Summand>,
    /// `⟨χ, χ⟩` for the permutation character, i.e. the mean of `fix²`.
    pub character_norm: FixedPointMoments,
}

fn matrix(n: usize, f: impl Fn(usize, usize) -> Rational64) -> RatMatrix {
    (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect()
}

pub fn mat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let n = a.len();
    matrix(n, |i, j| (0..n).fold(Rational64::zero(), |acc, k| acc + a[i][k] * b[k][j]))
}

pub fn mat_add(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    matrix(a.len(), |i, j| a[i][j] + b[i][j])
}

pub fn trace(a: &RatMatrix) -> Rational64 {
    (0..a.len()).map(|i| a[i][i]).sum()
}

/// Matrix of `σ` on `F(M)` in the basis of indicator functions.
pub fn permutation_matrix(s: &SignedPerm) -> RatMatrix {
    let g = s.g();
    let n = 2 * g;
    let mut m = vec![vec![Rational64::zero(); n]; n];
    for p in 0..n {
        m[position(g, s.apply(element_at(g, p)))][p] = Rational64::one();
    }
    m
}

/// `F(M) = 1 ⊕ G(M) ⊕ H(M)`: constants, even functions of sum zero, odd
/// functions.
pub fn decompose_permutation_module(g: usize) -> Result<ModuleDecomposition, WeylError> {
    decompose_with(g, 0, DEFAULT_SAMPLES)
}

pub fn decompose_with(g: usize, seed: u64, samples: usize) -> Result<ModuleDecomposition, WeylError> {
    if g < 3 {
        return Err(WeylError::Unsupported { g, min: 3 });
    }
    let n = 2 * g;
    let half = Rational64::new(1, 2);
    let avg = Rational64::new(1, n as i64);
    // J swaps i and -i
    let partner = |p: usize| if p < g { p + g } else { p - g };
    let id = |i: usize, j: usize| if i == j { Rational64::one() } else { Rational64::zero() };
    let jm = |i: usize, j: usize| if partner(i) == j { Rational64::one() } else { Rational64::zero() };
    let trivial = matrix(n, |_, _| avg);
    let even = matrix(n, |i, j| (id(i, j) + jm(i, j)) * half - avg);
    let odd = matrix(n, |i, j| (id(i, j) - jm(i, j)) * half);
    let summands = vec![
        Summand {
            name: "1".into(),
            dim: 1,
            projection: trivial,
        },
        Summand {
            name: "G".into(),
            dim: g - 1,
            projection: even,
        },
        Summand {
            name: "H".into(),
            dim: g,
            projection: odd,
        },
    ];
    for s in &summands {
        debug_assert_eq!(trace(&s.projection), Rational64::from_integer(s.dim as i64));
    }
    Ok(ModuleDecomposition {
        g,
        summands,
        character_norm: fixed_point_moments(g, seed, samples),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductDecomposition {
    pub gs: Vec<usize>,
    /// Constituents with their dimensions, one trivial summand per factor.
    pub constituents: Vec<(String, usize)>,
    pub total_dim: usize,
    /// Number of orbits on the disjoint union (mean of `fix`).
    pub trivial_multiplicity: f64,
    /// `⟨χ, χ⟩` (mean of `fix²`); equals `k² + 2k` when the constituents are
    /// as listed.
    pub character_norm: f64,
    pub std_error: f64,
    pub exact: bool,
    /// Dimension of `1 ⊕ ⨁ G(M_i) ⊕ ⨁ H(M_i)` with a single trivial summand.
    pub single_trivial_dim: usize,
    pub single_trivial_mismatch: bool,
}

/// Decomposition of the permutation module of `W⁺_{2g_1} × … × W⁺_{2g_k}` on
/// `M_1 ⊔ … ⊔ M_k`. Fixed-point moments of the product follow from those of
/// the factors since `fix` is additive and the factors independent.
pub fn product_module_decomposition(gs: &[usize]) -> Result<ProductDecomposition, WeylError> {
    product_with(gs, 0, DEFAULT_SAMPLES)
}

pub fn product_with(gs: &[usize], seed: u64, samples: usize) -> Result<ProductDecomposition, WeylError> {
    if gs.is_empty() {
        return Err(WeylError::Domain("at least one factor is required".into()));
    }
    let mut constituents = Vec::new();
    let mut moments = Vec::new();
    for (i, &g) in gs.iter().enumerate() {
        if g < 3 {
            return Err(WeylError::Unsupported { g, min: 3 });
        }
        let k = i + 1;
        constituents.push((format!("1_{k}"), 1));
        constituents.push((format!("G(M_{k})"), g - 1));
        constituents.push((format!("H(M_{k})"), g));
        moments.push(fixed_point_moments(g, seed.wrapping_add(i as u64), samples));
    }
    let mean: f64 = moments.iter().map(|m| m.mean_fix).sum();
    let mut norm: f64 = moments.iter().map(|m| m.mean_fix_sq).sum();
    for i in 0..moments.len() {
        for j in 0..moments.len() {
            if i != j {
                norm += moments[i].mean_fix * moments[j].mean_fix;
            }
        }
    }
    let exact = moments.iter().all(|m| m.exact);
    let std_error = moments.iter().map(|m| m.std_error * m.std_error).sum::<f64>().sqrt();
    let total_dim: usize = gs.iter().map(|g| 2 * g).sum();
    let single_trivial_dim = 1 + gs.iter().map(|g| 2 * g - 1).sum::<usize>();
    Ok(ProductDecomposition {
        gs: gs.to_vec(),
        constituents,
        total_dim,
        trivial_multiplicity: mean,
        character_norm: norm,
        std_error,
        exact,
        single_trivial_dim,
        single_trivial_mismatch: single_trivial_dim != total_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_orbits() {
        for (g, sizes) in [(3, [6, 6, 24]), (4, [8, 8, 48])] {
            let o = orbits_on_pairs(g).unwrap();
            let mut s = o.sizes();
            s.sort();
            let mut want = sizes.to_vec();
            want.sort();
            assert_eq!(s, want);
            assert!(o.warning.is_none());
        }
    }

    #[test]
    fn small_rank_has_more_orbits() {
        let o = orbits_on_pairs(2).unwrap();
        assert!(o.orbits.len() > 3);
        assert!(o.warning.is_some());
        assert_eq!(o.sizes().iter().sum::<usize>(), 16);
        assert!(orbits_on_pairs(1).is_err());
    }

    #[test]
    fn projections_split_the_identity() {
        let d = decompose_permutation_module(4).unwrap();
        let n = 8;
        let ps: Vec<&RatMatrix> = d.summands.iter().map(|s| &s.projection).collect();
        let sum = mat_add(&mat_add(ps[0], ps[1]), ps[2]);
        for i in 0..n {
            for j in 0..n {
                assert_eq!(sum[i][j], if i == j { Rational64::one() } else { Rational64::zero() });
            }
        }
        for (a, p) in ps.iter().enumerate() {
            assert_eq!(&mat_mul(p, p), *p);
            for (b, q) in ps.iter().enumerate() {
                if a != b {
                    assert!(mat_mul(p, q).iter().flatten().all(Zero::is_zero));
                }
            }
            for s in generators_plus(4) {
                let m = permutation_matrix(&s);
                assert_eq!(mat_mul(&m, p), mat_mul(p, &m));
            }
        }
        assert_eq!(d.summands.iter().map(|s| s.dim).collect::<Vec<_>>(), vec![1, 3, 4]);
    }

    #[test]
    fn burnside_norm_is_three() {
        let m = fixed_point_moments(5, 0, 0);
        assert!(m.exact);
        assert_eq!(m.group_order, 1920);
        assert_eq!(m.exact_values.unwrap().1, Rational64::from_integer(3));
        assert_eq!(m.exact_values.unwrap().0, Rational64::from_integer(1));
    }

    #[test]
    fn product_of_two() {
        let p = product_module_decomposition(&[3, 4]).unwrap();
        assert!(p.exact);
        assert_eq!(p.trivial_multiplicity, 2.0);
        assert_eq!(p.character_norm, 8.0);
        assert_eq!(p.total_dim, 14);
        assert!(p.single_trivial_mismatch);
        let q = product_module_decomposition(&[3]).unwrap();
        assert!(!q.single_trivial_mismatch);
        assert_eq!(q.constituents.iter().map(|c| c.1).collect::<Vec<_>>(), vec![1, 2, 3]);
    }
}
