//! Reduced row echelon form over the field with `p` elements.

use crate::pc::inv_mod;

/// Incrementally maintained reduced echelon form. Pivots are the first
/// nonzero column of each row; every pivot column is zero in all other rows.
#[derive(Clone, Debug)]
pub struct Echelon {
    p: u32,
    ncols: usize,
    /// `rows[c]` is the row whose pivot is column `c`.
    rows: Vec<Option<Vec<u32>>>,
    rank: usize,
}

impl Echelon {
    pub fn new(p: u32, ncols: usize) -> Self {
        Self {
            p,
            ncols,
            rows: vec![None; ncols],
            rank: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.rows[c].is_some()
    }

    pub fn row(&self, c: usize) -> Option<&[u32]> {
        self.rows[c].as_deref()
    }

    /// Reduces `v` against the current rows.
    pub fn reduce(&self, v: &mut [u32]) {
        let p = self.p as u64;
        for c in 0..self.ncols {
            let e = v[c];
            if e == 0 {
                continue;
            }
            if let Some(row) = &self.rows[c] {
                let f = (self.p - e) as u64;
                for (x, &r) in v[c..].iter_mut().zip(&row[c..]) {
                    if r != 0 {
                        *x = ((*x as u64 + f * r as u64) % p) as u32;
                    }
                }
            }
        }
    }

    /// Adds a relation; returns its pivot column if it raised the rank.
    pub fn insert(&mut self, mut v: Vec<u32>) -> Option<usize> {
        debug_assert_eq!(v.len(), self.ncols);
        self.reduce(&mut v);
        let c = v.iter().position(|&e| e != 0)?;
        let p = self.p as u64;
        let inv = inv_mod(v[c], self.p) as u64;
        for x in v[c..].iter_mut() {
            *x = (*x as u64 * inv % p) as u32;
        }
        for row in self.rows.iter_mut().flatten() {
            let e = row[c];
            if e != 0 {
                let f = (self.p - e) as u64;
                for (x, &r) in row[c..].iter_mut().zip(&v[c..]) {
                    if r != 0 {
                        *x = ((*x as u64 + f * r as u64) % p) as u32;
                    }
                }
            }
        }
        self.rows[c] = Some(v);
        self.rank += 1;
        Some(c)
    }

    /// Non-pivot columns in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.rows[c].is_none()).collect()
    }

    /// Expresses every column in terms of the free columns: entry `c` is a
    /// list of `(index into free_columns, coefficient)`.
    pub fn substitution(&self) -> Vec<Vec<(usize, u32)>> {
        let free = self.free_columns();
        let mut pos = vec![usize::MAX; self.ncols];
        for (k, &c) in free.iter().enumerate() {
            pos[c] = k;
        }
        (0..self.ncols)
            .map(|c| match &self.rows[c] {
                None => vec![(pos[c], 1)],
                Some(row) => row
                    .iter()
                    .enumerate()
                    .filter(|&(d, &e)| d != c && e != 0)
                    .map(|(d, &e)| (pos[d], self.p - e))
                    .collect(),
            })
            .collect()
    }
}
