//! Eigenvalue matrices of the Johnson scheme.
//!
//! Orientation: entry `(i, j)` of `P` is `P_j(i)`, the eigenvalue of class
//! matrix `A_j` on eigenspace `i`. Class `j` joins two k-sets meeting in
//! `k - j` points. `Q` uses the same orientation, entry `(i, j) = Q_j(i)`,
//! so that `P·Q = v·I` and the MacWilliams transform of an inner
//! distribution `a` is the row vector `a·Q`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::combinat::{binom, binom_i, rat_string, BigRat, SchemeParams};
use crate::error::{domain, Error, Result};

/// Eberlein polynomial `E_j(x)` of `J(n, k)` evaluated at integer `x`.
pub fn eberlein(j: usize, x: usize, params: &SchemeParams) -> Result<BigInt> {
    let (n, k) = (params.n as i64, params.k as i64);
    if j > params.k || x > params.k {
        return domain(format!("eberlein index out of range: j={j}, x={x}, k={k}"));
    }
    let (j, x) = (j as i64, x as i64);
    let mut sum = BigInt::zero();
    for t in 0..=j {
        let term = binom_i(k - t, j - t) * binom_i(k - x, t) * binom_i(n - k + t - x, t);
        if (j - t) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(sum)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenMatrices {
    pub params: SchemeParams,
    #[serde(serialize_with = "crate::ser::int_matrix")]
    pub p: Vec<Vec<BigInt>>,
    #[serde(serialize_with = "crate::ser::rat_matrix")]
    pub q: Vec<Vec<BigRat>>,
    #[serde(serialize_with = "crate::ser::ints")]
    pub valencies: Vec<BigInt>,
    #[serde(serialize_with = "crate::ser::ints")]
    pub multiplicities: Vec<BigInt>,
}

impl EigenMatrices {
    /// `C(n, i) - C(n, i - 1)`.
    pub fn multiplicity(&self, i: usize) -> &BigInt {
        &self.multiplicities[i]
    }

    /// Eigenvalues `Σ_{j∈I} P_j(i)` of the union graph over the given classes.
    pub fn union_eigenvalues(&self, classes: &[usize]) -> Vec<BigInt> {
        self.p
            .iter()
            .map(|row| classes.iter().map(|&j| &row[j]).sum())
            .collect()
    }

    /// `(a·Q)_j` for every `j`.
    pub fn macwilliams(&self, a: &[BigRat]) -> Vec<BigRat> {
        let d = self.params.k + 1;
        (0..d)
            .map(|j| {
                a.iter()
                    .zip(&self.q)
                    .fold(BigRat::zero(), |acc, (ai, row)| acc + ai * &row[j])
            })
            .collect()
    }

    fn check(&self) -> Result<()> {
        let d = self.params.k + 1;
        let v = BigInt::from(self.params.v);
        for i in 0..d {
            for l in 0..d {
                let s = (0..d).fold(BigRat::zero(), |acc, j| {
                    acc + BigRat::from(self.p[i][j].clone()) * &self.q[j][l]
                });
                let want = if i == l { BigRat::from(v.clone()) } else { BigRat::zero() };
                if s != want {
                    return Err(Error::Consistency(format!(
                        "(P·Q)[{i}][{l}] = {} for J({}, {})",
                        rat_string(&s),
                        self.params.n,
                        self.params.k
                    )));
                }
            }
            let row_sum: BigInt = self.p[i].iter().sum();
            let want = if i == 0 { v.clone() } else { BigInt::zero() };
            if row_sum != want {
                return Err(Error::Consistency(format!("row {i} of P sums to {row_sum}")));
            }
        }
        if self.valencies.iter().sum::<BigInt>() != v
            || self.multiplicities.iter().sum::<BigInt>() != v
        {
            return Err(Error::Consistency("valencies or multiplicities do not sum to v".into()));
        }
        Ok(())
    }
}

/// Exact `P` and `Q` of `J(n, k)`, self-checked against `P·Q = v·I`.
///
/// Needs `n >= 2k`; below that some classes are empty and `Q` is undefined.
pub fn eigen_matrices(params: &SchemeParams) -> Result<EigenMatrices> {
    let (n, k) = (params.n, params.k);
    if n < 2 * k {
        return domain(format!(
            "J({n}, {k}) has empty classes (n < 2k); use J({n}, {}) instead",
            n - k
        ));
    }
    let d = k + 1;
    let mut p = vec![vec![BigInt::zero(); d]; d];
    for (i, row) in p.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = eberlein(j, i, params)?;
        }
    }
    let valencies: Vec<BigInt> = (0..d)
        .map(|j| binom(k as u64, j as i64) * binom((n - k) as u64, j as i64))
        .collect();
    let multiplicities: Vec<BigInt> = (0..d)
        .map(|i| binom(n as u64, i as i64) - binom(n as u64, i as i64 - 1))
        .collect();
    // Q_j(i) = m_j · E_i(j) / (C(k,i)·C(n-k,i))
    let q = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| BigRat::new(&multiplicities[j] * &p[j][i], valencies[i].clone()))
                .collect()
        })
        .collect();
    let em = EigenMatrices {
        params: *params,
        p,
        q,
        valencies,
        multiplicities,
    };
    if em.valencies != em.p[0] {
        return Err(Error::Consistency("row 0 of P differs from valencies".into()));
    }
    if em.multiplicities.iter().any(|m| !m.is_positive()) {
        return Err(Error::Consistency("non-positive multiplicity".into()));
    }
    em.check()?;
    Ok(em)
}

fn r(num: i128, den: i128) -> BigRat {
    BigRat::new(BigInt::from(num), BigInt::from(den))
}

/// The displayed closed forms for `J(n, 4)` as functions of `n`.
pub fn k4_closed_form_p(n: i64) -> Vec<Vec<BigRat>> {
    let n = n as i128;
    vec![
        vec![
            r(1, 1),
            r(4 * (n - 4), 1),
            r(3 * (n - 5) * (n - 4), 1),
            r(2 * (n - 6) * (n - 5) * (n - 4), 3),
            r((n - 7) * (n - 6) * (n - 5) * (n - 4), 24),
        ],
        vec![
            r(1, 1),
            r(3 * n - 16, 1),
            r(3 * (n - 8) * (n - 5), 2),
            r((n - 16) * (n - 6) * (n - 5), 6),
            r(-(n - 7) * (n - 6) * (n - 5), 6),
        ],
        vec![
            r(1, 1),
            r(2 * (n - 7), 1),
            r((n - 21) * n + 92, 2),
            r(-(n - 9) * (n - 6), 1),
            r((n - 7) * (n - 6), 2),
        ],
        vec![r(1, 1), r(n - 10, 1), r(-3 * (n - 8), 1), r(3 * n - 22, 1), r(7 - n, 1)],
        vec![r(1, 1), r(-4, 1), r(6, 1), r(-4, 1), r(1, 1)],
    ]
}

/// Closed-form `Q` of `J(n, 4)`; requires `n >= 8` so no denominator vanishes.
pub fn k4_closed_form_q(n: i64) -> Vec<Vec<BigRat>> {
    let n = n as i128;
    vec![
        vec![
            r(1, 1),
            r(n - 1, 1),
            r((n - 3) * n, 2),
            r((n - 5) * (n - 1) * n, 6),
            r((n - 7) * (n - 2) * (n - 1) * n, 24),
        ],
        vec![
            r(1, 1),
            r(3 * n - 7, 4) - r(3, n - 4),
            r((n - 7) * (n - 3) * n, 4 * (n - 4)),
            r((n - 10) * (n - 5) * (n - 1) * n, 24 * (n - 4)),
            r(-(n - 7) * (n - 2) * (n - 1) * n, 24 * (n - 4)),
        ],
        vec![
            r(1, 1),
            r((n - 8) * (n - 1), 2 * (n - 4)),
            r((n - 3) * n * ((n - 21) * n + 92), 12 * (n - 5) * (n - 4)),
            r(-(n - 8) * (n - 1) * n, 6 * (n - 4)),
            r((n - 7) * (n - 2) * (n - 1) * n, 12 * (n - 5) * (n - 4)),
        ],
        vec![
            r(1, 1),
            r((n - 16) * (n - 1), 4 * (n - 4)),
            r(-3 * (n - 9) * (n - 3) * n, 4 * (n - 5) * (n - 4)),
            r((n - 1) * n * (3 * n - 22), 4 * (n - 6) * (n - 4)),
            r(-(n - 7) * (n - 2) * (n - 1) * n, 4 * (n - 6) * (n - 5) * (n - 4)),
        ],
        vec![
            r(1, 1),
            r(-4 * (n - 1), n - 4),
            r(6 * (n - 3) * n, (n - 5) * (n - 4)),
            r(-4 * (n - 1) * n, (n - 6) * (n - 4)),
            r((n - 2) * (n - 1) * n, (n - 6) * (n - 5) * (n - 4)),
        ],
    ]
}

/// Compares [`eigen_matrices`] for `J(n, 4)` with the closed forms, all 50 entries.
pub fn verify_k4_closed_forms(n: usize) -> bool {
    if !(8..=crate::combinat::MAX_N).contains(&n) {
        return false;
    }
    let Ok(params) = SchemeParams::new(n, 4) else {
        return false;
    };
    let Ok(em) = eigen_matrices(&params) else {
        return false;
    };
    let cp = k4_closed_form_p(n as i64);
    let cq = k4_closed_form_q(n as i64);
    (0..5).all(|i| {
        (0..5).all(|j| {
            BigRat::from(em.p[i][j].clone()) == cp[i][j] && em.q[i][j] == cq[i][j]
        })
    })
}

/// Whether `r` is integral; handy for the Q-matrix entries.
pub fn is_integral(r: &BigRat) -> bool {
    r.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn eberlein_examples() {
        let p10 = SchemeParams::new(10, 4).unwrap();
        assert_eq!(eberlein(1, 0, &p10).unwrap(), BigInt::from(24));
        for n in 8..30 {
            let p = SchemeParams::new(n, 4).unwrap();
            assert_eq!(eberlein(1, 0, &p).unwrap(), BigInt::from(4 * (n as i64 - 4)));
            assert_eq!(eberlein(2, 4, &p).unwrap(), BigInt::from(6));
            for x in 0..=4 {
                assert_eq!(eberlein(0, x, &p).unwrap(), BigInt::one());
            }
        }
        assert!(eberlein(5, 0, &p10).is_err());
    }

    #[test]
    fn n10_k4_values() {
        let em = eigen_matrices(&SchemeParams::new(10, 4).unwrap()).unwrap();
        let row0: Vec<BigRat> = em.q[0].clone();
        let want: Vec<BigRat> = [1, 9, 35, 75, 90].iter().map(|&x| r(x, 1)).collect();
        assert_eq!(row0, want);
        let col2: Vec<BigInt> = em.p.iter().map(|row| row[2].clone()).collect();
        assert_eq!(col2, ints(&[90, 15, -9, -6, 6]));
    }

    #[test]
    fn last_row_alternates() {
        for k in 2..=6 {
            for n in 2 * k..2 * k + 6 {
                let em = eigen_matrices(&SchemeParams::new(n, k).unwrap()).unwrap();
                for j in 0..=k {
                    let mut want = binom(k as u64, j as i64);
                    if j % 2 == 1 {
                        want = -want;
                    }
                    assert_eq!(em.p[k][j], want, "n={n} k={k} j={j}");
                }
            }
        }
    }

    #[test]
    fn closed_forms_hold() {
        for n in [8, 9, 10, 16, 49, 60] {
            assert!(verify_k4_closed_forms(n), "n={n}");
        }
        assert!(!verify_k4_closed_forms(7));
    }

    #[test]
    fn degenerate_schemes_rejected() {
        assert!(eigen_matrices(&SchemeParams::new(7, 4).unwrap()).is_err());
        assert!(eigen_matrices(&SchemeParams::new(8, 4).unwrap()).is_ok());
    }

    #[test]
    fn second_q_column_matches_display() {
        // c = (n-1)/(4(n-4)) · (4(n-4), 3n-16, 2(n-8), n-16, -16)
        for n in 9..25i128 {
            let em = eigen_matrices(&SchemeParams::new(n as usize, 4).unwrap()).unwrap();
            let s = r(n - 1, 4 * (n - 4));
            let c = [4 * (n - 4), 3 * n - 16, 2 * (n - 8), n - 16, -16];
            for i in 0..5 {
                assert_eq!(em.q[i][1], &s * r(c[i], 1));
            }
        }
    }
}
