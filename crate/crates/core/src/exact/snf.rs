//! Smith normal form over the integers.

use super::IntMatrix;
use crate::error::{Error, Result};

/// `u · m · v = d`, with `u`, `v` unimodular and `d` diagonal, `d_i | d_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i))
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|&&x| x != 0).count()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<i64> {
        self.diagonal().into_iter().filter(|&x| x > 1).collect()
    }
}

struct Work {
    a: Vec<Vec<i64>>,
    u: Vec<Vec<i64>>,
    v: Vec<Vec<i64>>,
}

fn ck(x: Option<i64>) -> Result<i64> {
    x.ok_or(Error::Overflow("Smith normal form"))
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
    }

    /// row_i += f · row_j
    fn add_row(&mut self, i: usize, j: usize, f: i64) -> Result<()> {
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m[i].len() {
                m[i][c] = ck(m[j][c].checked_mul(f).and_then(|t| m[i][c].checked_add(t)))?;
            }
        }
        Ok(())
    }

    /// col_i += f · col_j
    fn add_col(&mut self, i: usize, j: usize, f: i64) -> Result<()> {
        for m in [&mut self.a, &mut self.v] {
            for row in m.iter_mut() {
                row[i] = ck(row[j].checked_mul(f).and_then(|t| row[i].checked_add(t)))?;
            }
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.u] {
            for x in m[i].iter_mut() {
                *x = -*x;
            }
        }
    }
}

fn identity_rows(n: usize) -> Vec<Vec<i64>> {
    IntMatrix::identity(n).to_rows()
}

pub fn smith_normal_form(m: &IntMatrix) -> Result<Smith> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.to_rows(),
        u: identity_rows(rows),
        v: identity_rows(cols),
    };

    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero |entry| of the trailing block becomes the pivot
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| w.a[i][j] != 0)
                .min_by_key(|&(i, j)| w.a[i][j].unsigned_abs());
            let Some((pi, pj)) = pivot else {
                return finish(w);
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);

            let p = w.a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let f = w.a[i][t] / p;
                if f != 0 {
                    w.add_row(i, t, -f)?;
                }
                clean &= w.a[i][t] == 0;
            }
            for j in t + 1..cols {
                let f = w.a[t][j] / p;
                if f != 0 {
                    w.add_col(j, t, -f)?;
                }
                clean &= w.a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| w.a[i][j] % p != 0));
            match offender {
                Some(i) => w.add_row(t, i, 1)?,
                None => break,
            }
        }
        if w.a[t][t] < 0 {
            w.negate_row(t);
        }
    }
    finish(w)
}

fn finish(w: Work) -> Result<Smith> {
    Ok(Smith {
        u: IntMatrix::from_rows(&w.u)?,
        d: IntMatrix::from_rows(&w.a)?,
        v: IntMatrix::from_rows(&w.v)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> Smith {
        let s = smith_normal_form(m).unwrap();
        assert_eq!(s.u.mul(m).unwrap().mul(&s.v).unwrap(), s.d);
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
        s
    }

    #[test]
    fn small_cases() {
        assert_eq!(check(&IntMatrix::identity(3)).diagonal(), vec![1, 1, 1]);
        let d = IntMatrix::from_rows(&[vec![2, 0], vec![0, 4]]).unwrap();
        assert_eq!(check(&d).diagonal(), vec![2, 4]);
        let m = IntMatrix::from_rows(&[vec![4, 0], vec![0, 6]]).unwrap();
        assert_eq!(check(&m).diagonal(), vec![2, 12]);
        let z = IntMatrix::zeros(2, 3);
        assert_eq!(check(&z).rank(), 0);
        let r = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).unwrap();
        assert_eq!(check(&r).diagonal(), vec![2, 6, 12]);
    }
}
