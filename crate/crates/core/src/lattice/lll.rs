//! Exact integral LLL (δ = 3/4) in the de Weger formulation: all Gram–Schmidt
//! data is kept as integers `d_i` and `λ_{ij}`, so no rounding ever occurs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::LatticeError;

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
    // d > 0
    let two = BigInt::from(2);
    (n * &two + d).div_floor(&(d * &two))
}

struct State {
    b: Vec<Vec<BigInt>>,
    lambda: Vec<Vec<BigInt>>,
    /// `d[i]` is the Gram determinant of the first `i` vectors.
    d: Vec<BigInt>,
}

impl State {
    fn reduce(&mut self, k: usize, l: usize) {
        let dl = self.d[l + 1].clone();
        if (&self.lambda[k][l] * 2u32).abs() > dl {
            let r = round_div(&self.lambda[k][l], &dl);
            let bl = self.b[l].clone();
            for (x, y) in self.b[k].iter_mut().zip(&bl) {
                *x -= &r * y;
            }
            self.lambda[k][l] -= &r * &dl;
            for i in 0..l {
                let t = &r * &self.lambda[l][i];
                self.lambda[k][i] -= t;
            }
        }
    }

    fn swap(&mut self, k: usize, kmax: usize) {
        self.b.swap(k, k - 1);
        for j in 0..k - 1 {
            let t = self.lambda[k][j].clone();
            self.lambda[k][j] = self.lambda[k - 1][j].clone();
            self.lambda[k - 1][j] = t;
        }
        let lam = self.lambda[k][k - 1].clone();
        let bnew = (&self.d[k - 1] * &self.d[k + 1] + &lam * &lam) / &self.d[k];
        for i in k + 1..=kmax {
            let t = self.lambda[i][k].clone();
            self.lambda[i][k] =
                (&self.d[k + 1] * &self.lambda[i][k - 1] - &lam * &t) / &self.d[k];
            self.lambda[i][k - 1] = (&bnew * &t + &lam * &self.lambda[i][k]) / &self.d[k + 1];
        }
        self.d[k] = bnew;
    }
}

/// LLL-reduces a basis of linearly independent integer row vectors.
pub fn lll(basis: Vec<Vec<BigInt>>) -> Result<Vec<Vec<BigInt>>, LatticeError> {
    let n = basis.len();
    if n <= 1 {
        return Ok(basis);
    }
    let mut st = State {
        lambda: vec![vec![BigInt::zero(); n]; n],
        d: vec![BigInt::zero(); n + 1],
        b: basis,
    };
    st.d[0] = BigInt::from(1);
    st.d[1] = dot(&st.b[0], &st.b[0]);
    if st.d[1].is_zero() {
        return Err(LatticeError::Dependent);
    }
    let mut k = 1;
    let mut kmax = 0;
    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = dot(&st.b[k], &st.b[j]);
                for i in 0..j {
                    u = (&st.d[i + 1] * &u - &st.lambda[k][i] * &st.lambda[j][i]) / &st.d[i];
                }
                if j < k {
                    st.lambda[k][j] = u;
                } else {
                    if u.is_zero() {
                        return Err(LatticeError::Dependent);
                    }
                    st.d[k + 1] = u;
                }
            }
        }
        st.reduce(k, k - 1);
        let lhs = BigInt::from(4) * &st.d[k + 1] * &st.d[k - 1];
        let rhs = BigInt::from(3) * &st.d[k] * &st.d[k]
            - BigInt::from(4) * &st.lambda[k][k - 1] * &st.lambda[k][k - 1];
        if lhs < rhs {
            st.swap(k, kmax);
            k = k.saturating_sub(1).max(1);
        } else {
            for l in (0..k - 1).rev() {
                st.reduce(k, l);
            }
            k += 1;
        }
    }
    Ok(st.b)
}
