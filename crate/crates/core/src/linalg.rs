//! Small dense exact matrices.

use num_traits::{One, Zero};

use crate::cartan::IntMatrix;
use crate::error::{Error, Result};
use crate::qnum::{rat, Rational};

pub type QMatrix = Vec<Vec<Rational>>;

pub fn int_identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn int_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum())
                .collect()
        })
        .collect()
}

pub fn int_transpose(a: &IntMatrix) -> IntMatrix {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len())
        .map(|j| a.iter().map(|row| row[j]).collect())
        .collect()
}

pub fn to_q(a: &IntMatrix) -> QMatrix {
    a.iter()
        .map(|row| row.iter().map(|x| rat(*x)).collect())
        .collect()
}

pub fn q_identity(n: usize) -> QMatrix {
    to_q(&int_identity(n))
}

pub fn q_mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = Rational::zero();
                    for (t, row) in b.iter().enumerate() {
                        acc += &a[i][t] * &row[j];
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn q_add(a: &QMatrix, b: &QMatrix, sign: i64) -> QMatrix {
    let s = rat(sign);
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + &(y * &s)).collect())
        .collect()
}

pub fn q_transpose(a: &QMatrix) -> QMatrix {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len())
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Gauss-Jordan inverse over `Q`.
pub fn q_inverse(a: &QMatrix) -> Result<QMatrix> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or_else(|| Error::Singular(format!("no pivot in column {}", col + 1)))?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= &factor * p;
                }
            }
        }
    }
    Ok(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Integer entries, if every entry is integral.
pub fn q_to_int(a: &QMatrix) -> Option<IntMatrix> {
    a.iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    if x.is_integer() {
                        i64::try_from(x.to_integer()).ok()
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect()
}

pub fn render_int(a: &IntMatrix) -> String {
    let rows: Vec<String> = a
        .iter()
        .map(|r| {
            format!(
                "[{}]",
                r.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        })
        .collect();
    format!("[{}]", rows.join(","))
}

pub fn render_q(a: &QMatrix) -> String {
    let rows: Vec<String> = a
        .iter()
        .map(|r| {
            format!(
                "[{}]",
                r.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        })
        .collect();
    format!("[{}]", rows.join(","))
}
