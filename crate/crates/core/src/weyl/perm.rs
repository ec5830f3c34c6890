//! Signed permutations of `M = {±1, …, ±g}`.

use std::collections::{HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;

use super::WeylError;

/// A bijection `σ` of `M` with `σ(-i) = -σ(i)`, stored as `σ(1), …, σ(g)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    images: Vec<i32>,
}

impl SignedPerm {
    pub fn new(images: Vec<i32>) -> Result<Self, WeylError> {
        let g = images.len() as i32;
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x == 0 || x.abs() > g || seen[(x.abs() - 1) as usize] {
                return Err(WeylError::Domain(format!("{images:?} is not a signed permutation")));
            }
            seen[(x.abs() - 1) as usize] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(g: usize) -> Self {
        Self {
            images: (1..=g as i32).collect(),
        }
    }

    pub fn g(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[i32] {
        &self.images
    }

    pub fn apply(&self, i: i32) -> i32 {
        let s = self.images[(i.abs() - 1) as usize];
        if i > 0 {
            s
        } else {
            -s
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            images: other.images.iter().map(|&x| self.apply(x)).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut out = vec![0; self.g()];
        for (i, &x) in self.images.iter().enumerate() {
            let j = i as i32 + 1;
            out[(x.abs() - 1) as usize] = if x > 0 { j } else { -j };
        }
        Self { images: out }
    }

    pub fn sign_changes(&self) -> usize {
        self.images.iter().filter(|&&x| x < 0).count()
    }

    pub fn sgn(&self) -> i32 {
        if self.sign_changes() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Number of fixed points on `M`.
    pub fn fixed_points(&self) -> usize {
        2 * self
            .images
            .iter()
            .enumerate()
            .filter(|(i, &x)| x == *i as i32 + 1)
            .count()
    }

    /// Action on a vector indexed by `M` in the order `1, …, g, -1, …, -g`:
    /// `(σv)(σ(i)) = v(i)`.
    pub fn act(&self, v: &[i64]) -> Vec<i64> {
        let g = self.g();
        assert_eq!(v.len(), 2 * g);
        let mut out = vec![0; 2 * g];
        for i in 1..=g as i32 {
            for s in [i, -i] {
                out[position(g, self.apply(s))] = v[position(g, s)];
            }
        }
        out
    }

    pub fn random<R: Rng>(g: usize, even: bool, rng: &mut R) -> Self {
        let mut images: Vec<i32> = (1..=g as i32).collect();
        images.shuffle(rng);
        for x in images.iter_mut() {
            if rng.gen::<bool>() {
                *x = -*x;
            }
        }
        // flipping the last sign is a 2-to-1 map onto the even elements
        if even && images.iter().filter(|&&x| x < 0).count() % 2 == 1 {
            images[g - 1] = -images[g - 1];
        }
        Self { images }
    }
}

/// Index of `i ∈ M` in the order `1, …, g, -1, …, -g`.
pub fn position(g: usize, i: i32) -> usize {
    if i > 0 {
        (i - 1) as usize
    } else {
        g + (-i - 1) as usize
    }
}

pub fn element_at(g: usize, pos: usize) -> i32 {
    if pos < g {
        pos as i32 + 1
    } else {
        -((pos - g) as i32 + 1)
    }
}

/// Adjacent pair transpositions and the double sign change on `{1, 2}`.
pub fn generators_plus(g: usize) -> Vec<SignedPerm> {
    let mut out = Vec::new();
    for i in 0..g.saturating_sub(1) {
        let mut s = SignedPerm::identity(g);
        s.images.swap(i, i + 1);
        out.push(s);
    }
    if g >= 2 {
        let mut s = SignedPerm::identity(g);
        s.images[0] = -1;
        s.images[1] = -2;
        out.push(s);
    }
    out
}

/// Generators of the full group: those of the even subgroup and one sign change.
pub fn generators_full(g: usize) -> Vec<SignedPerm> {
    let mut out = generators_plus(g);
    let mut s = SignedPerm::identity(g);
    s.images[0] = -1;
    out.push(s);
    out
}

/// All elements of the group generated by `gens`, breadth first from the identity.
pub fn closure(g: usize, gens: &[SignedPerm]) -> Vec<SignedPerm> {
    let id = SignedPerm::identity(g);
    let mut seen: HashSet<SignedPerm> = HashSet::from([id.clone()]);
    let mut order = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in gens {
            let y = s.compose(&x);
            if seen.insert(y.clone()) {
                order.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    order
}

/// `2^g g!` for the full group, half that for the even subgroup.
pub fn group_order(g: usize, even: bool) -> u128 {
    let fact: u128 = (1..=g as u128).product();
    let two = 1u128 << g;
    if even {
        two * fact / 2
    } else {
        two * fact
    }
}

/// Every element of `W_2g` (or of its even part) without a closure search.
pub fn elements(g: usize, even: bool) -> impl Iterator<Item = SignedPerm> {
    let perms = permutations(g);
    perms.into_iter().flat_map(move |p| {
        (0u32..1 << g).filter_map(move |mask| {
            if even && mask.count_ones() % 2 == 1 {
                return None;
            }
            let images = p
                .iter()
                .enumerate()
                .map(|(i, &x)| if mask >> i & 1 == 1 { -x } else { x })
                .collect();
            Some(SignedPerm { images })
        })
    })
}

fn permutations(g: usize) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    let mut cur: Vec<i32> = (1..=g as i32).collect();
    heap(g, &mut cur, &mut out);
    out
}

fn heap(k: usize, a: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
    if k <= 1 {
        out.push(a.clone());
        return;
    }
    for i in 0..k - 1 {
        heap(k - 1, a, out);
        if k % 2 == 0 {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
    heap(k - 1, a, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sgn_examples() {
        assert_eq!(SignedPerm::identity(4).sgn(), 1);
        assert_eq!(SignedPerm::new(vec![-1, 2, 3]).unwrap().sgn(), -1);
        assert!(SignedPerm::new(vec![1, 1, 3]).is_err());
    }

    #[test]
    fn sgn_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let g = rng.gen_range(1..=6);
            let s = SignedPerm::random(g, false, &mut rng);
            let t = SignedPerm::random(g, false, &mut rng);
            assert_eq!(s.compose(&t).sgn(), s.sgn() * t.sgn());
            assert_eq!(s.compose(&s.inverse()), SignedPerm::identity(g));
        }
    }

    #[test]
    fn group_orders_by_closure() {
        for g in 1..=6 {
            let full = closure(g, &generators_full(g));
            assert_eq!(full.len() as u128, group_order(g, false));
            let plus = closure(g, &generators_plus(g));
            assert_eq!(plus.len() as u128, group_order(g, true));
            assert!(plus.iter().all(|s| s.sgn() == 1));
            assert_eq!(elements(g, true).count() as u128, group_order(g, true));
        }
    }

    #[test]
    fn action_commutes_with_involution() {
        let s = SignedPerm::new(vec![-2, 3, 1]).unwrap();
        for i in [1, 2, 3, -1, -2, -3] {
            assert_eq!(s.apply(-i), -s.apply(i));
        }
        let v: Vec<i64> = (0..6).collect();
        let w = s.act(&v);
        // value at 1 moves to σ(1) = -2
        assert_eq!(w[position(3, -2)], v[position(3, 1)]);
        assert_eq!(s.compose(&s).act(&v), s.act(&s.act(&v)));
    }
}
