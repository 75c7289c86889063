//! Seeded generators for the property suite.
//!
//! Random valid Hom-algebras are produced from a small catalog of ordinary
//! algebras, each paired with a family of multiplicative endomorphisms,
//! moved to a random basis and then Yau-twisted. Entries stay small so exact
//! arithmetic stays cheap.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{yau_twist, HomAlgebra, Kind};
use crate::cochain::CochainSpace;
use crate::error::Error;
use crate::exact::{frac, rat, Matrix, Rational};
use crate::multilinear::MultilinearMap;

/// `P·μ(P⁻¹x, P⁻¹y)` with `α' = PαP⁻¹`; `p` must be invertible.
pub fn conjugate(a: &HomAlgebra, p: &Matrix) -> Result<HomAlgebra, Error> {
    let inv = p
        .inverse()
        .ok_or_else(|| Error::DimensionMismatch("change of basis is singular".into()))?;
    Ok(HomAlgebra {
        name: a.name.clone(),
        kind: a.kind,
        basis: a.basis.clone(),
        mul: a.mul.compose_inputs(&inv).compose_output(p),
        alpha: p.mul(&a.alpha)?.mul(&inv)?,
    })
}

/// An ordinary algebra (`α = id`) together with a multiplicative map.
#[derive(Clone, Debug)]
pub struct OrdinarySample {
    pub algebra: HomAlgebra,
    pub gamma: Matrix,
}

pub struct Generator {
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Generator { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> Rational {
        rat(self.rng.gen_range(lo..=hi))
    }

    /// Mostly small integers, occasionally a half.
    pub fn scalar(&mut self) -> Rational {
        if self.rng.gen_bool(0.15) {
            frac(self.rng.gen_range(-3..=3), 2)
        } else {
            self.int(-2, 2)
        }
    }

    pub fn nonzero(&mut self) -> Rational {
        rat(*[1, -1, 2, -2].choose(&mut self.rng).unwrap())
    }

    pub fn bool(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, self.scalar());
            }
        }
        m
    }

    /// Unit lower times upper triangular with a nonzero diagonal.
    pub fn invertible(&mut self, n: usize) -> Matrix {
        let mut l = Matrix::identity(n);
        let mut u = Matrix::zeros(n, n);
        for i in 0..n {
            u.set(i, i, self.nonzero());
            for j in 0..i {
                l.set(i, j, self.int(-1, 1));
            }
            for j in i + 1..n {
                u.set(i, j, self.int(-1, 1));
            }
        }
        l.mul(&u).expect("square")
    }

    pub fn multilinear(&mut self, arity: usize, source_dim: usize, target_dim: usize) -> MultilinearMap {
        MultilinearMap::from_fn(arity, source_dim, target_dim, |_| {
            (0..target_dim).map(|_| self.sparse_scalar()).collect()
        })
    }

    fn sparse_scalar(&mut self) -> Rational {
        if self.rng.gen_bool(0.5) {
            rat(0)
        } else {
            self.scalar()
        }
    }

    /// Random element of a cochain space.
    pub fn cochain(&mut self, space: &CochainSpace) -> MultilinearMap {
        let coords: Vec<Rational> = (0..space.dim()).map(|_| self.scalar()).collect();
        space.element(&coords)
    }

    /// A random bilinear map on `k^n`; skew-symmetric for Lie.
    pub fn tensor(&mut self, kind: Kind, n: usize) -> MultilinearMap {
        let mut m = MultilinearMap::zero(2, n, n);
        for i in 0..n {
            for j in 0..n {
                if kind == Kind::Lie && j <= i {
                    continue;
                }
                let v: Vec<Rational> = (0..n).map(|_| self.sparse_scalar()).collect();
                m.set(&[i, j], &v);
                if kind == Kind::Lie {
                    let neg: Vec<Rational> = v.iter().map(|x| -x).collect();
                    m.set(&[j, i], &neg);
                }
            }
        }
        m
    }

    pub fn ordinary(&mut self, kind: Kind) -> OrdinarySample {
        match kind {
            Kind::Associative => self.ordinary_associative(),
            Kind::Lie => self.ordinary_lie(),
        }
    }

    fn ordinary_associative(&mut self) -> OrdinarySample {
        let v = |xs: &[i64]| xs.iter().map(|&x| rat(x)).collect::<Vec<_>>();
        let (name, dim, products, gamma) = match self.index(5) {
            0 => {
                // k[x]/x², basis (1, x); γ(x) = a·x.
                let a = self.scalar();
                let g = Matrix::diagonal(&[rat(1), a]);
                ("dual", 2, vec![(0, 0, v(&[1, 0])), (0, 1, v(&[0, 1])), (1, 0, v(&[0, 1]))], g)
            }
            1 => {
                // k[x]/x³, basis (1, x, x²); γ(x) = a·x + b·x².
                let (a, b) = (self.scalar(), self.scalar());
                let mut g = Matrix::zeros(3, 3);
                g.set(0, 0, rat(1));
                g.set(1, 1, a.clone());
                g.set(2, 1, b);
                g.set(2, 2, &a * &a);
                let products = vec![
                    (0, 0, v(&[1, 0, 0])),
                    (0, 1, v(&[0, 1, 0])),
                    (1, 0, v(&[0, 1, 0])),
                    (0, 2, v(&[0, 0, 1])),
                    (2, 0, v(&[0, 0, 1])),
                    (1, 1, v(&[0, 0, 1])),
                ];
                ("truncated_poly", 3, products, g)
            }
            2 => {
                // k^n with orthogonal idempotents; γ sends idempotents to idempotents or 0.
                let n = 2 + self.index(2);
                let products = (0..n).map(|i| (i, i, crate::exact::unit_vec(n, i))).collect();
                let mut perm: Vec<usize> = (0..n).collect();
                perm.shuffle(&mut self.rng);
                let mut g = Matrix::zeros(n, n);
                for (j, &pj) in perm.iter().enumerate() {
                    if j == 0 || self.bool(0.7) {
                        g.set(pj, j, rat(1));
                    }
                }
                ("diagonal", n, products, g)
            }
            3 => {
                // Upper triangular 2×2, basis (E11, E12, E22); γ = conjugation by [[1,u],[0,s]].
                let (u, s) = (self.scalar(), self.nonzero());
                // U E11 U⁻¹ = E11 − (u/s) E12, U E12 U⁻¹ = (1/s) E12, U E22 U⁻¹ = (u/s) E12 + E22.
                let mut g = Matrix::zeros(3, 3);
                g.set(0, 0, rat(1));
                g.set(1, 0, -&u / &s);
                g.set(1, 1, rat(1) / &s);
                g.set(1, 2, &u / &s);
                g.set(2, 2, rat(1));
                let products = vec![
                    (0, 0, v(&[1, 0, 0])),
                    (0, 1, v(&[0, 1, 0])),
                    (1, 2, v(&[0, 1, 0])),
                    (2, 2, v(&[0, 0, 1])),
                ];
                ("upper_triangular", 3, products, g)
            }
            _ => {
                // Zero product; every linear map is multiplicative.
                let n = 1 + self.index(3);
                let g = self.matrix(n, n);
                ("zero_product", n, Vec::new(), g)
            }
        };
        let algebra = HomAlgebra::from_products(name, Kind::Associative, dim, &products, Matrix::identity(dim))
            .expect("catalog entry is well formed");
        OrdinarySample { algebra, gamma }
    }

    fn ordinary_lie(&mut self) -> OrdinarySample {
        let v = |xs: &[i64]| xs.iter().map(|&x| rat(x)).collect::<Vec<_>>();
        let (name, dim, products, gamma) = match self.index(5) {
            0 => {
                let n = 1 + self.index(3);
                let g = self.matrix(n, n);
                ("abelian", n, Vec::new(), g)
            }
            1 => {
                // [e1,e2] = e2; γ(e1) = e1 + t·e2, γ(e2) = s·e2.
                let (t, s) = (self.scalar(), self.scalar());
                let g = Matrix::from_rows(vec![vec![rat(1), rat(0)], vec![t, s]]).unwrap();
                ("affine_line", 2, vec![(0, 1, v(&[0, 1]))], g)
            }
            2 => {
                // Heisenberg [e1,e2] = e3; any γ on span(e1,e2), determinant on e3.
                let (a, b, c, d) = (self.scalar(), self.scalar(), self.scalar(), self.scalar());
                let (x, y) = (self.scalar(), self.scalar());
                let det = &a * &d - &b * &c;
                let g = Matrix::from_rows(vec![
                    vec![a, c, rat(0)],
                    vec![b, d, rat(0)],
                    vec![x, y, det],
                ])
                .unwrap();
                ("heisenberg", 3, vec![(0, 1, v(&[0, 0, 1]))], g)
            }
            3 => {
                // [e1,e2] = e2 with e3 central; γ(e3) = w·e3, γ(e1) may pick up e3.
                let (t, s, u, w) = (self.scalar(), self.scalar(), self.scalar(), self.scalar());
                let g = Matrix::from_rows(vec![
                    vec![rat(1), rat(0), rat(0)],
                    vec![t, s, rat(0)],
                    vec![u, rat(0), w],
                ])
                .unwrap();
                ("affine_plus_centre", 3, vec![(0, 1, v(&[0, 1, 0]))], g)
            }
            _ => {
                // sl2 with basis (h, e, f); γ = diag(1, t, 1/t) is an automorphism.
                let t = self.nonzero();
                let g = Matrix::diagonal(&[rat(1), t.clone(), rat(1) / t]);
                let products = vec![
                    (0, 1, v(&[0, 2, 0])),
                    (0, 2, v(&[0, 0, -2])),
                    (1, 2, v(&[1, 0, 0])),
                ];
                ("sl2", 3, products, g)
            }
        };
        let algebra = HomAlgebra::from_products(name, Kind::Lie, dim, &products, Matrix::identity(dim))
            .expect("catalog entry is well formed");
        OrdinarySample { algebra, gamma }
    }

    /// Ordinary sample moved to a random basis; γ is conjugated alongside.
    pub fn ordinary_in_random_basis(&mut self, kind: Kind) -> OrdinarySample {
        let s = self.ordinary(kind);
        let p = self.invertible(s.algebra.dim());
        let inv = p.inverse().expect("invertible by construction");
        let algebra = conjugate(&s.algebra, &p).expect("invertible by construction");
        let gamma = p.mul(&s.gamma).unwrap().mul(&inv).unwrap();
        OrdinarySample { algebra, gamma }
    }

    /// A valid multiplicative Hom-algebra of dimension ≤ 3.
    pub fn valid_algebra(&mut self, kind: Kind) -> HomAlgebra {
        let s = self.ordinary_in_random_basis(kind);
        yau_twist(&s.algebra, &s.gamma).expect("catalog maps are multiplicative")
    }

    /// A valid algebra of exactly dimension `n`, when the catalog has one.
    pub fn valid_algebra_of_dim(&mut self, kind: Kind, n: usize) -> HomAlgebra {
        loop {
            let a = self.valid_algebra(kind);
            if a.dim() == n {
                return a;
            }
        }
    }
}
