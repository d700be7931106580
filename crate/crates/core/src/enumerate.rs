//! Exhaustive enumeration of lattice points in an ellipsoid
//! `{x : B(x - a, x - a) <= R}` for positive definite `B`.
//!
//! The form is written as a sum of squares
//! `B(y, y) = sum_i q_ii (y_i + sum_{j > i} q_ij y_j)^2`
//! and coordinates are fixed from the last to the first. Each coordinate
//! range is computed with an exact integer square root, so the sweep is
//! provably complete.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{LatticeVector, Matrix, QuadraticForm, Rational, RationalVector};

/// Sum-of-squares decomposition of a positive definite form.
#[derive(Clone, Debug)]
pub struct SquareDecomposition {
    q: Matrix,
}

impl SquareDecomposition {
    pub fn new(form: &QuadraticForm) -> Result<Self> {
        if !form.is_positive_definite() {
            return Err(Error::NotPositiveDefinite);
        }
        let n = form.rank();
        let mut q = form.matrix().clone();
        for i in 0..n {
            for j in i + 1..n {
                q[(j, i)] = q[(i, j)].clone();
                q[(i, j)] = &q[(i, j)] / &q[(i, i)];
            }
            for k in i + 1..n {
                for l in k..n {
                    let v = &q[(k, i)] * &q[(i, l)];
                    q[(k, l)] -= v;
                }
            }
        }
        Ok(Self { q })
    }

    fn rank(&self) -> usize {
        self.q.rows()
    }

    fn diag(&self, i: usize) -> &Rational {
        &self.q[(i, i)]
    }

    fn upper(&self, i: usize, j: usize) -> &Rational {
        &self.q[(i, j)]
    }
}

/// Integer range `{x : (x + mu)^2 <= s}`; empty when `s < 0`.
fn integer_window(mu: &Rational, s: &Rational) -> Option<(i64, i64)> {
    if s.is_negative() {
        return None;
    }
    let a = mu.numer();
    let b = mu.denom();
    // (b x + a)^2 <= b^2 s  <=>  |b x + a| <= isqrt(floor(b^2 s))
    let scaled = (s * Rational::from_integer(b * b)).floor().to_integer();
    let k: BigInt = scaled.sqrt();
    let lo = -(&k + a).div_floor(b);
    let hi = (&k - a).div_floor(b);
    if lo > hi {
        return None;
    }
    Some((lo.to_i64()?, hi.to_i64()?))
}

/// All lattice points `x` with `B(x - center, x - center) <= bound`, in
/// lexicographic order.
pub fn points_within(
    form: &QuadraticForm,
    center: &RationalVector,
    bound: &Rational,
) -> Result<Vec<LatticeVector>> {
    let decomp = SquareDecomposition::new(form)?;
    points_within_decomposed(&decomp, center, bound)
}

pub fn points_within_decomposed(
    decomp: &SquareDecomposition,
    center: &RationalVector,
    bound: &Rational,
) -> Result<Vec<LatticeVector>> {
    let g = decomp.rank();
    if center.dim() != g {
        return Err(Error::DimensionMismatch {
            expected: g,
            found: center.dim(),
        });
    }
    let mut out = Vec::new();
    let mut x = vec![0i64; g];
    if g == 0 {
        return Ok(out);
    }
    descend(decomp, center, g - 1, bound.clone(), &mut x, &mut out);
    out.sort();
    Ok(out)
}

fn descend(
    d: &SquareDecomposition,
    center: &RationalVector,
    level: usize,
    remaining: Rational,
    x: &mut Vec<i64>,
    out: &mut Vec<LatticeVector>,
) {
    let g = d.rank();
    let mut mu = -center.0[level].clone();
    for j in level + 1..g {
        mu += d.upper(level, j) * (Rational::from_integer(x[j].into()) - &center.0[j]);
    }
    let s = &remaining / d.diag(level);
    let Some((lo, hi)) = integer_window(&mu, &s) else {
        return;
    };
    for xi in lo..=hi {
        x[level] = xi;
        let t = Rational::from_integer(xi.into()) + &mu;
        let rest = &remaining - d.diag(level) * &t * &t;
        if rest.is_negative() {
            continue;
        }
        if level == 0 {
            out.push(LatticeVector(x.clone()));
        } else {
            descend(d, center, level - 1, rest, x, out);
        }
    }
    x[level] = 0;
}

/// All lattice points of smallest `B`-distance to `alpha`.
pub fn nearest_points(form: &QuadraticForm, alpha: &RationalVector) -> Result<Vec<LatticeVector>> {
    let g = form.rank();
    if alpha.dim() != g {
        return Err(Error::DimensionMismatch {
            expected: g,
            found: alpha.dim(),
        });
    }
    let decomp = SquareDecomposition::new(form)?;
    let guess = LatticeVector(
        alpha
            .0
            .iter()
            .map(|c| c.round().to_integer().to_i64().expect("coordinate fits i64"))
            .collect(),
    );
    let dist = |p: &LatticeVector| {
        let d = p.to_rational().sub(alpha);
        form.evaluate(&d, &d).expect("same rank")
    };
    let bound = dist(&guess);
    let candidates = points_within_decomposed(&decomp, alpha, &bound)?;
    let best = candidates
        .iter()
        .map(dist)
        .min()
        .unwrap_or_else(Rational::zero);
    Ok(candidates.into_iter().filter(|p| dist(p) == best).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    fn brute(form: &QuadraticForm, center: &RationalVector, bound: &Rational, r: i64) -> Vec<LatticeVector> {
        let g = form.rank();
        let mut out = Vec::new();
        let mut idx = vec![-r; g];
        loop {
            let p = LatticeVector(idx.clone());
            let d = p.to_rational().sub(center);
            if form.evaluate(&d, &d).unwrap() <= *bound {
                out.push(p);
            }
            let mut k = 0;
            loop {
                if k == g {
                    out.sort();
                    return out;
                }
                idx[k] += 1;
                if idx[k] <= r {
                    break;
                }
                idx[k] = -r;
                k += 1;
            }
        }
    }

    #[test]
    fn matches_brute_force() {
        let forms = [
            QuadraticForm::from_i64(&[&[2, -1], &[-1, 2]]),
            QuadraticForm::from_i64(&[&[5, 2], &[2, 1]]),
            QuadraticForm::from_i64(&[&[3, -1, -1], &[-1, 3, -1], &[-1, -1, 3]]),
        ];
        let centers = [
            RationalVector(vec![ratio(1, 3), ratio(-2, 5)]),
            RationalVector(vec![rat(0), ratio(7, 2)]),
            RationalVector(vec![ratio(1, 2), ratio(1, 2), ratio(-1, 3)]),
        ];
        for (f, c) in forms.iter().zip(&centers) {
            for bound in [rat(0), ratio(1, 2), rat(3), ratio(29, 4)] {
                let fast = points_within(f, c, &bound).unwrap();
                let slow = brute(f, c, &bound, 12);
                assert_eq!(fast, slow, "form {f} bound {bound}");
            }
        }
    }

    #[test]
    fn nearest_points_examples() {
        let id = QuadraticForm::identity(2);
        let half = RationalVector(vec![ratio(1, 2), ratio(1, 2)]);
        let got = nearest_points(&id, &half).unwrap();
        let want: Vec<LatticeVector> = [[0, 0], [0, 1], [1, 0], [1, 1]]
            .iter()
            .map(|v| LatticeVector(v.to_vec()))
            .collect();
        assert_eq!(got, want);

        let a2 = QuadraticForm::from_i64(&[&[2, -1], &[-1, 2]]);
        assert_eq!(
            nearest_points(&a2, &RationalVector::zero(2)).unwrap(),
            vec![LatticeVector::zero(2)]
        );
        let c = RationalVector(vec![ratio(2, 3), ratio(1, 3)]);
        let got = nearest_points(&a2, &c).unwrap();
        assert_eq!(
            got,
            vec![
                LatticeVector(vec![0, 0]),
                LatticeVector(vec![1, 0]),
                LatticeVector(vec![1, 1]),
            ]
        );
    }

    #[test]
    fn nearest_points_brute_force_box() {
        // Oracle: scan [-3, 3]^2 directly.
        let a2 = QuadraticForm::from_i64(&[&[2, -1], &[-1, 2]]);
        let c = RationalVector(vec![ratio(2, 3), ratio(1, 3)]);
        let all = brute(&a2, &c, &rat(1000), 3);
        let dist = |p: &LatticeVector| {
            let d = p.to_rational().sub(&c);
            a2.evaluate(&d, &d).unwrap()
        };
        let best = all.iter().map(dist).min().unwrap();
        assert_eq!(best, ratio(2, 3));
        let want: Vec<_> = all.into_iter().filter(|p| dist(p) == best).collect();
        assert_eq!(nearest_points(&a2, &c).unwrap(), want);
    }

    #[test]
    fn rejects_indefinite() {
        let f = QuadraticForm::from_i64(&[&[1, 0], &[0, 0]]);
        assert_eq!(
            nearest_points(&f, &RationalVector::zero(2)),
            Err(Error::NotPositiveDefinite)
        );
    }
}
