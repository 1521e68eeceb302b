//! Independent oracles: faithful matrix models of small p-groups and
//! brute-force checks on multiplication tables.
#![allow(dead_code)]

use std::collections::HashMap;

use pgroup_core::{NormalWord, PcBuilder, PcPresentation};

pub type Mat = Vec<Vec<u32>>;

fn identity(dim: usize) -> Mat {
    (0..dim)
        .map(|i| (0..dim).map(|j| u32::from(i == j)).collect())
        .collect()
}

fn mat_mul(a: &Mat, b: &Mat, m: u32) -> Mat {
    let dim = a.len();
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| (0..dim).map(|k| a[i][k] * b[k][j]).sum::<u32>() % m)
                .collect()
        })
        .collect()
}

/// `I + E_{ij}` (1-based positions) scaled by `c`.
pub fn elementary(dim: usize, i: usize, j: usize, c: u32) -> Mat {
    let mut x = identity(dim);
    x[i - 1][j - 1] = c;
    x
}

pub fn block_diag(a: &Mat, b: &Mat) -> Mat {
    let (n, k) = (a.len(), b.len());
    let mut x = vec![vec![0; n + k]; n + k];
    for i in 0..n {
        x[i][..n].copy_from_slice(&a[i]);
    }
    for i in 0..k {
        x[n + i][n..].copy_from_slice(&b[i]);
    }
    x
}

/// Permutation matrix sending basis vector `i` to `perm[i]`.
pub fn permutation(perm: &[usize]) -> Mat {
    let n = perm.len();
    let mut x = vec![vec![0; n]; n];
    for (i, &j) in perm.iter().enumerate() {
        x[j][i] = 1;
    }
    x
}

/// A p-group given by matrices over `Z/m` forming a polycyclic sequence
/// with all relative orders `p`.
pub struct MatrixModel {
    pub name: &'static str,
    pub p: u32,
    pub m: u32,
    pub gens: Vec<Mat>,
    table: HashMap<Mat, Vec<u32>>,
}

impl MatrixModel {
    /// Enumerates all normal words and panics unless they give distinct matrices.
    pub fn new(name: &'static str, p: u32, m: u32, gens: Vec<Mat>) -> Self {
        let mut model = Self {
            name,
            p,
            m,
            gens,
            table: HashMap::new(),
        };
        let n = model.gens.len();
        let total = (p as usize).pow(n as u32);
        for mut k in 0..total {
            let mut v = vec![0u32; n];
            for e in v.iter_mut().rev() {
                *e = (k % p as usize) as u32;
                k /= p as usize;
            }
            let x = model.element(&v);
            assert!(model.table.insert(x, v).is_none(), "{name}: normal words collide");
        }
        model
    }

    pub fn dim(&self) -> usize {
        self.gens[0].len()
    }

    pub fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        mat_mul(a, b, self.m)
    }

    pub fn pow(&self, a: &Mat, k: u64) -> Mat {
        (0..k).fold(identity(self.dim()), |acc, _| self.mul(&acc, a))
    }

    pub fn inv(&self, a: &Mat) -> Mat {
        // the group order is p^n, so a^(p^n - 1) is the inverse
        let order = (self.p as u64).pow(self.gens.len() as u32);
        self.pow(a, order - 1)
    }

    pub fn element(&self, exps: &[u32]) -> Mat {
        exps.iter()
            .zip(&self.gens)
            .fold(identity(self.dim()), |acc, (&e, g)| self.mul(&acc, &self.pow(g, e as u64)))
    }

    pub fn normal_form(&self, x: &Mat) -> Vec<u32> {
        self.table.get(x).cloned().expect("matrix outside the group")
    }

    /// PC presentation read off the matrices; every relation is checked to
    /// be supported where the triangular shape demands.
    pub fn pc_presentation(&self) -> PcPresentation {
        let n = self.gens.len();
        let mut b = PcBuilder::new(self.p);
        for _ in 0..n {
            b.add_generator(1, None);
        }
        let letters = |v: &[u32], after: usize| {
            assert!(v[..=after].iter().all(|&e| e == 0), "{}: relation not triangular", self.name);
            v.iter()
                .enumerate()
                .filter(|&(_, &e)| e != 0)
                .map(|(g, &e)| (g as u32, e))
                .collect::<Vec<_>>()
        };
        for i in 0..n {
            let w = self.normal_form(&self.pow(&self.gens[i], self.p as u64));
            b.set_power(i as u32, letters(&w, i)).unwrap();
        }
        for j in 0..n {
            for i in 0..j {
                let (x, y) = (&self.gens[j], &self.gens[i]);
                let c = self.mul(&self.mul(&self.inv(x), &self.inv(y)), &self.mul(x, y));
                let w = self.normal_form(&c);
                b.set_comm(j as u32, i as u32, letters(&w, j)).unwrap();
            }
        }
        b.build().unwrap()
    }
}

/// The models used throughout the suites, all of order at most `3^5`
/// (or `2^6`).
pub fn models() -> Vec<MatrixModel> {
    let e = elementary;
    vec![
        MatrixModel::new("heisenberg mod 3", 3, 3, vec![e(3, 1, 2, 1), e(3, 2, 3, 1), e(3, 1, 3, 2)]),
        MatrixModel::new(
            "unitriangular 4x4 mod 3 with zero (3,4) entry",
            3,
            3,
            vec![e(4, 1, 2, 1), e(4, 2, 3, 1), e(4, 2, 4, 1), e(4, 1, 3, 1), e(4, 1, 4, 1)],
        ),
        MatrixModel::new(
            "Z/9 by Z/3 as affine maps of Z/9",
            3,
            9,
            vec![vec![vec![4, 0], vec![0, 1]], e(2, 1, 2, 1), e(2, 1, 2, 3)],
        ),
        MatrixModel::new("C3 wr C3 as permutation matrices", 3, 3, wreath_gens()),
        MatrixModel::new(
            "unitriangular 4x4 mod 2",
            2,
            2,
            vec![
                e(4, 1, 2, 1),
                e(4, 2, 3, 1),
                e(4, 3, 4, 1),
                e(4, 1, 3, 1),
                e(4, 2, 4, 1),
                e(4, 1, 4, 1),
            ],
        ),
        MatrixModel::new(
            "quaternion group in GL(2, Z/3) times C2",
            2,
            3,
            {
                let i = vec![vec![0, 2], vec![1, 0]];
                let j = vec![vec![1, 1], vec![1, 2]];
                let minus = vec![vec![2, 0], vec![0, 2]];
                let c2 = vec![vec![2]];
                let one = vec![vec![1]];
                vec![
                    block_diag(&i, &one),
                    block_diag(&j, &one),
                    block_diag(&minus, &one),
                    block_diag(&identity(2), &c2),
                ]
            },
        ),
    ]
}

/// `t` permutes three blocks cyclically; the base is filtered by powers of `t - 1`.
fn wreath_gens() -> Vec<Mat> {
    let t = permutation(&[3, 4, 5, 6, 7, 8, 0, 1, 2]);
    let cycle = |block: usize, k: usize| {
        let mut perm: Vec<usize> = (0..9).collect();
        for _ in 0..k {
            for r in 0..3 {
                perm[3 * block + r] = 3 * block + (perm[3 * block + r] - 3 * block + 1) % 3;
            }
        }
        permutation(&perm)
    };
    let mul = |a: &Mat, b: &Mat| mat_mul(a, b, 3);
    let e0 = cycle(0, 1);
    // e1 - e0 and e0 + e1 + e2 in additive notation
    let x3 = mul(&cycle(1, 1), &cycle(0, 2));
    let x4 = mul(&mul(&cycle(0, 1), &cycle(1, 1)), &cycle(2, 1));
    vec![t, e0, x3, x4]
}

/// Whether collection gives an associative multiplication on all normal words.
pub fn brute_force_associative(pc: &PcPresentation) -> bool {
    let elems = pgroup_core::testing::all_elements(pc);
    let index: HashMap<&NormalWord, usize> = elems.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let table: Vec<Vec<usize>> = elems
        .iter()
        .map(|x| elems.iter().map(|y| index[&pc.multiply(x, y)]).collect())
        .collect();
    let n = elems.len();
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| table[table[a][b]][c] == table[a][table[b][c]])))
}
