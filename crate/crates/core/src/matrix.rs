//! Small dense integer matrices and exact rank computations.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Row-major integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<i64>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length must be rows * cols");
        IntMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<i64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Matrix product; panics on a dimension mismatch.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    out.data[r * other.cols + c] += a * other.get(k, c);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self.get(r, c) == self.get(c, r)))
    }

    /// Rank over GF(2).
    pub fn rank_gf2(&self) -> usize {
        let words = self.cols.div_ceil(64);
        let mut rows: Vec<Vec<u64>> = (0..self.rows)
            .map(|r| {
                let mut bits = vec![0u64; words];
                for c in 0..self.cols {
                    if self.get(r, c) & 1 != 0 {
                        bits[c / 64] |= 1 << (c % 64);
                    }
                }
                bits
            })
            .collect();
        let mut rank = 0;
        for c in 0..self.cols {
            let (w, b) = (c / 64, 1u64 << (c % 64));
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][w] & b != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let (head, tail) = rows.split_at_mut(rank + 1);
            let prow = &head[rank];
            for row in tail.iter_mut() {
                if row[w] & b != 0 {
                    for (x, y) in row.iter_mut().zip(prow) {
                        *x ^= y;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Rank modulo the prime `2^61 − 1`. For matrices with small entries
    /// this equals the rank over the rationals.
    pub fn rank_mod_prime(&self) -> usize {
        let mut m: Vec<u64> = self.data.iter().map(|&x| to_field(x)).collect();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for c in 0..cols {
            let Some(pivot) = (rank..rows).find(|&r| m[r * cols + c] != 0) else {
                continue;
            };
            if pivot != rank {
                for k in 0..cols {
                    m.swap(pivot * cols + k, rank * cols + k);
                }
            }
            let inv = inverse(m[rank * cols + c]);
            for r in rank + 1..rows {
                let f = m[r * cols + c];
                if f == 0 {
                    continue;
                }
                let scale = mul_mod(f, inv);
                for k in c..cols {
                    let sub = mul_mod(scale, m[rank * cols + k]);
                    m[r * cols + k] = sub_mod(m[r * cols + k], sub);
                }
            }
            rank += 1;
        }
        rank
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|r| self.row(r)))
            .finish()
    }
}

const PRIME: u64 = (1 << 61) - 1;

fn to_field(x: i64) -> u64 {
    let r = x.rem_euclid(PRIME as i64);
    r as u64
}

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn sub_mod(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + PRIME - b
    }
}

fn inverse(a: u64) -> u64 {
    // Fermat: a^(p−2).
    let mut e = PRIME - 2;
    let mut base = a;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_agree_on_small_examples() {
        let m = IntMatrix::from_rows(3, 3, vec![1, 1, 0, 0, 1, 1, 1, 0, 1]);
        // Over GF(2) the rows sum to zero; over Q they do not.
        assert_eq!(m.rank_gf2(), 2);
        assert_eq!(m.rank_mod_prime(), 3);
        let e = IntMatrix::zeros(0, 4);
        assert_eq!(e.rank_gf2(), 0);
        assert_eq!(e.rank_mod_prime(), 0);
        let id = IntMatrix::from_rows(2, 2, vec![-1, 0, 0, -1]);
        assert_eq!(id.rank_mod_prime(), 2);
    }

    #[test]
    fn product_and_transpose() {
        let a = IntMatrix::from_rows(2, 3, vec![1, 2, 3, 4, 5, 6]);
        let ata = a.transpose().mul(&a);
        assert_eq!(ata.get(0, 0), 17);
        assert_eq!(ata.get(2, 1), 3 * 2 + 6 * 5);
        assert!(ata.is_symmetric());
    }
}
