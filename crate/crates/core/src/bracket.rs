//! Products and brackets on cochains.
//!
//! Degrees here follow the insertion formulas: a cochain of arity `p` has
//! degree `p − 1`. Everything else in the crate indexes by arity.

use num::Zero;

use crate::algebra::HomAlgebra;
use crate::cohomology::{columns, inner_term, sign};
use crate::error::Error;
use crate::exact::{rat, Matrix, Rational};
use crate::multilinear::{factorial, permutation_sign, permutations, MultilinearMap};

fn degree(f: &MultilinearMap) -> Result<usize, Error> {
    f.arity()
        .checked_sub(1)
        .ok_or_else(|| Error::Unsupported("products need cochains of arity at least 1".into()))
}

fn require_alternating(f: &MultilinearMap) -> Result<(), Error> {
    if f.is_alternating() {
        Ok(())
    } else {
        Err(Error::NonAlternating)
    }
}

/// `j_φ(ψ)(x_0..x_{a+b}) = Σ_{k=0}^{b} (−1)^{ak}
/// ψ(α^a x_0, .., α^a x_{k−1}, φ(x_k..x_{k+a}), α^a x_{k+a+1}, .., α^a x_{a+b})`
/// for `φ` of degree `a` on `A` and `ψ` of degree `b` from `A`.
pub fn comp_product(
    alpha: &Matrix,
    phi: &MultilinearMap,
    psi: &MultilinearMap,
) -> Result<MultilinearMap, Error> {
    let (a, b) = (degree(phi)?, degree(psi)?);
    let n = alpha.nrows();
    if phi.source_dim() != n || phi.target_dim() != n || psi.source_dim() != n {
        return Err(Error::DimensionMismatch("composition needs φ: A^k → A and ψ from A".into()));
    }
    let twisted = columns(&alpha.pow(a));
    Ok(MultilinearMap::from_fn(a + b + 1, n, psi.target_dim(), |t| {
        let mut out = vec![Rational::zero(); psi.target_dim()];
        for k in 0..=b {
            let inner = phi.value(&t[k..=k + a]);
            let mut args: Vec<&[Rational]> = Vec::with_capacity(b + 1);
            args.extend(t[..k].iter().map(|&i| twisted[i].as_slice()));
            args.push(inner);
            args.extend(t[k + a + 1..].iter().map(|&i| twisted[i].as_slice()));
            let s = sign(a * k);
            for (o, x) in out.iter_mut().zip(psi.eval(&args)) {
                *o += &s * x;
            }
        }
        out
    }))
}

/// `[φ, ψ]^Δ = j_ψ(φ) − (−1)^{ab} j_φ(ψ)`.
pub fn gerstenhaber_bracket(
    alpha: &Matrix,
    phi: &MultilinearMap,
    psi: &MultilinearMap,
) -> Result<MultilinearMap, Error> {
    let (a, b) = (degree(phi)?, degree(psi)?);
    let first = comp_product(alpha, psi, phi)?;
    let second = comp_product(alpha, phi, psi)?;
    Ok(first.sub(&second.scale(&sign(a * b))))
}

/// `i_φ(ψ) = ((a+b+1)! / ((a+1)!(b+1)!)) λ(j_φ ψ)` on alternating cochains.
pub fn nr_product(
    alpha: &Matrix,
    phi: &MultilinearMap,
    psi: &MultilinearMap,
) -> Result<MultilinearMap, Error> {
    require_alternating(phi)?;
    require_alternating(psi)?;
    let (a, b) = (degree(phi)?, degree(psi)?);
    let c = factorial(a + b + 1) / (factorial(a + 1) * factorial(b + 1));
    Ok(crate::cochain::alternator(&comp_product(alpha, phi, psi)?).scale(&c))
}

/// `[φ, ψ]^∧ = i_φ(ψ) − (−1)^{ab} i_ψ(φ)`.
pub fn nr_bracket(
    alpha: &Matrix,
    phi: &MultilinearMap,
    psi: &MultilinearMap,
) -> Result<MultilinearMap, Error> {
    let (a, b) = (degree(phi)?, degree(psi)?);
    let first = nr_product(alpha, phi, psi)?;
    let second = nr_product(alpha, psi, phi)?;
    Ok(first.sub(&second.scale(&sign(a * b))))
}

fn check_cup(mu: &MultilinearMap, f: &MultilinearMap, g: &MultilinearMap) -> Result<(), Error> {
    if mu.arity() != 2
        || f.source_dim() != g.source_dim()
        || f.target_dim() != mu.source_dim()
        || g.target_dim() != mu.source_dim()
    {
        return Err(Error::DimensionMismatch("cup product operands do not match".into()));
    }
    Ok(())
}

/// `(f ⌣ g)(x_0..x_{a+b−1}) = μ(f(x_0..x_{a−1}), g(x_a..x_{a+b−1}))`.
pub fn cup_product_assoc(
    mu: &MultilinearMap,
    f: &MultilinearMap,
    g: &MultilinearMap,
) -> Result<MultilinearMap, Error> {
    check_cup(mu, f, g)?;
    let a = f.arity();
    Ok(MultilinearMap::from_fn(a + g.arity(), f.source_dim(), mu.target_dim(), |t| {
        mu.eval(&[f.value(&t[..a]), g.value(&t[a..])])
    }))
}

/// `[f, g]^⌣ = f ⌣ g − (−1)^{ab} g ⌣ f` for arities `a`, `b`.
pub fn cup_bracket_assoc(
    mu: &MultilinearMap,
    f: &MultilinearMap,
    g: &MultilinearMap,
) -> Result<MultilinearMap, Error> {
    let fg = cup_product_assoc(mu, f, g)?;
    let gf = cup_product_assoc(mu, g, f)?;
    Ok(fg.sub(&gf.scale(&sign(f.arity() * g.arity()))))
}

/// `[f, g]^⌣(x_0..x_{p+q−1}) = Σ_{σ ∈ S_{p+q}} ε(σ) [f(x_σ(0)..), g(x_σ(p)..)]'`,
/// summed over all permutations with no shuffle normalization.
pub fn cup_bracket_lie(
    bracket: &MultilinearMap,
    f: &MultilinearMap,
    g: &MultilinearMap,
) -> Result<MultilinearMap, Error> {
    check_cup(bracket, f, g)?;
    let (p, q) = (f.arity(), g.arity());
    let plain = cup_product_assoc(bracket, f, g)?;
    let mut out = MultilinearMap::zero(p + q, f.source_dim(), bracket.target_dim());
    for s in permutations(p + q) {
        out.add_scaled(&rat(permutation_sign(&s)), &plain.permute_args(&s));
    }
    Ok(out)
}

/// `(f ∘̄ g)(x..) = Σ_i (−1)^{i(b−1)} f(φx_0, .., φx_{i−1}, g(x_i..x_{i+b−1}), φx_{i+b}, ..)`
/// for `f` of arity `a` on `B` and `g` of arity `b` from `A` to `B`; the
/// result has arity `a + b − 1`.
pub fn overline_comp(
    phi: &Matrix,
    f: &MultilinearMap,
    g: &MultilinearMap,
) -> Result<MultilinearMap, Error> {
    let (a, b) = (f.arity(), g.arity());
    if a == 0
        || f.source_dim() != phi.nrows()
        || g.source_dim() != phi.ncols()
        || g.target_dim() != phi.nrows()
    {
        return Err(Error::DimensionMismatch("∘̄ operands do not match φ".into()));
    }
    let images = columns(phi);
    Ok(MultilinearMap::from_fn(a + b - 1, phi.ncols(), f.target_dim(), |t| {
        let mut out = vec![Rational::zero(); f.target_dim()];
        for i in 0..a {
            let inner = g.value(&t[i..i + b]);
            let mut args: Vec<&[Rational]> = Vec::with_capacity(a);
            args.extend(t[..i].iter().map(|&k| images[k].as_slice()));
            args.push(inner);
            args.extend(t[i + b..].iter().map(|&k| images[k].as_slice()));
            let s = sign(i * (b + 1));
            for (o, x) in out.iter_mut().zip(f.eval(&args)) {
                *o += &s * x;
            }
        }
        out
    }))
}

/// `(λ ⋄ φ)(x_1..x_n) = λ(φx_1, .., φx_n)`.
pub fn diamond(lam: &MultilinearMap, phi: &Matrix) -> Result<MultilinearMap, Error> {
    if lam.source_dim() != phi.nrows() {
        return Err(Error::DimensionMismatch("⋄ operands do not match φ".into()));
    }
    Ok(lam.compose_inputs(phi))
}

/// `Df(x_0..x_n) = Σ_{i=1}^{n} (−1)^i f(αx_0, .., μ(x_{i−1}, x_i), .., αx_n)`.
pub fn derivation_d_assoc(a: &HomAlgebra, f: &MultilinearMap) -> Result<MultilinearMap, Error> {
    let n = f.arity();
    if n == 0 || f.source_dim() != a.dim() {
        return Err(Error::DimensionMismatch("D needs a cochain of arity ≥ 1 on A".into()));
    }
    let alpha_cols = columns(&a.alpha);
    Ok(MultilinearMap::from_fn(n + 1, a.dim(), f.target_dim(), |t| {
        let mut out = vec![Rational::zero(); f.target_dim()];
        for i in 1..=n {
            let s = sign(i);
            for (o, x) in out.iter_mut().zip(inner_term(a, &alpha_cols, f, t, i - 1)) {
                *o += &s * x;
            }
        }
        out
    }))
}

/// `Df(x_0..x_n) = Σ_{i<j} (−1)^{i+j} f([x_i, x_j], αx_0, .., x̂_i, .., x̂_j, .., αx_n)`.
pub fn derivation_d_lie(l: &HomAlgebra, f: &MultilinearMap) -> Result<MultilinearMap, Error> {
    let n = f.arity();
    if n == 0 || f.source_dim() != l.dim() {
        return Err(Error::DimensionMismatch("D needs a cochain of arity ≥ 1 on L".into()));
    }
    let alpha_cols = columns(&l.alpha);
    let mut args: Vec<&[Rational]> = Vec::with_capacity(n);
    Ok(MultilinearMap::from_fn(n + 1, l.dim(), f.target_dim(), |t| {
        let mut out = vec![Rational::zero(); f.target_dim()];
        for i in 0..=n {
            for j in i + 1..=n {
                args.clear();
                args.push(l.product(t[i], t[j]));
                args.extend(
                    t.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, &x)| {
                        alpha_cols[x].as_slice()
                    }),
                );
                let s = sign(i + j);
                for (o, x) in out.iter_mut().zip(f.eval(&args)) {
                    *o += &s * x;
                }
            }
        }
        out
    }))
}

fn check_binary(alpha: &Matrix, maps: &[&MultilinearMap]) -> Result<usize, Error> {
    let n = alpha.nrows();
    for m in maps {
        if m.arity() != 2 || m.source_dim() != n || m.target_dim() != n {
            return Err(Error::DimensionMismatch("expected bilinear maps on the twisted space".into()));
        }
    }
    Ok(n)
}

/// `μ_i ∘_α μ_j (x,y,z) = μ_i(αx, μ_j(y,z)) − μ_i(μ_j(x,y), αz)`.
pub fn alpha_associator(
    alpha: &Matrix,
    mu_i: &MultilinearMap,
    mu_j: &MultilinearMap,
) -> Result<MultilinearMap, Error> {
    let n = check_binary(alpha, &[mu_i, mu_j])?;
    let ac = columns(alpha);
    Ok(MultilinearMap::from_fn(3, n, n, |t| {
        let left = mu_i.eval(&[&ac[t[0]], mu_j.value(&t[1..3])]);
        let right = mu_i.eval(&[mu_j.value(&t[0..2]), &ac[t[2]]]);
        left.iter().zip(right).map(|(l, r)| l - r).collect()
    }))
}

/// `Σ_cyc b_i(αx, b_j(y, z))`, the mixed Hom-Jacobi sum.
pub fn cyclic_jacobi(
    alpha: &Matrix,
    b_i: &MultilinearMap,
    b_j: &MultilinearMap,
) -> Result<MultilinearMap, Error> {
    let n = check_binary(alpha, &[b_i, b_j])?;
    let ac = columns(alpha);
    Ok(MultilinearMap::from_fn(3, n, n, |t| {
        let mut out = vec![Rational::zero(); n];
        for (x, y, z) in [(t[0], t[1], t[2]), (t[1], t[2], t[0]), (t[2], t[0], t[1])] {
            for (o, v) in out.iter_mut().zip(b_i.eval(&[&ac[x], b_j.value(&[y, z])])) {
                *o += v;
            }
        }
        out
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Kind;
    use crate::cohomology::delta_hom_self;
    use crate::exact::frac;
    use crate::fixtures;
    use crate::multilinear::tuples;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn degree_zero_insertion_is_plain_substitution() {
        let a = fixtures::a3(rat(1), rat(2));
        let phi = MultilinearMap::from_matrix(&Matrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 2]]));
        let j = comp_product(&a.alpha, &phi, &a.mul).unwrap();
        let expected = a.mul.compose_inputs(&Matrix::identity(3)); // shape only
        for t in tuples(2, 3) {
            let x = phi.to_matrix();
            let lhs = j.value(&t).to_vec();
            let first = a.mul.eval(&[&x.column(t[0]), &a.basis_vector(t[1])]);
            let second = a.mul.eval(&[&a.basis_vector(t[0]), &x.column(t[1])]);
            let rhs: Vec<Rational> = first.iter().zip(&second).map(|(p, q)| p + q).collect();
            assert_eq!(lhs, rhs);
        }
        assert_eq!(j.arity(), expected.arity());
    }

    #[test]
    fn composition_of_multiplication_with_itself() {
        let d = fixtures::dual_numbers();
        let j = comp_product(&d.alpha, &d.mul, &d.mul).unwrap();
        for t in tuples(3, 2) {
            let (x, y, z) = (d.basis_vector(t[0]), d.basis_vector(t[1]), d.basis_vector(t[2]));
            let xy = d.mul.eval(&[&x, &y]);
            let yz = d.mul.eval(&[&y, &z]);
            let lhs = d.mul.eval(&[&xy, &z]);
            let rhs = d.mul.eval(&[&x, &yz]);
            let want: Vec<Rational> = lhs.iter().zip(&rhs).map(|(p, q)| p - q).collect();
            assert_eq!(j.value(&t), &want[..]);
        }
    }

    #[test]
    fn gerstenhaber_square_of_valid_multiplication() {
        let a = fixtures::a3(rat(1), rat(2));
        assert!(gerstenhaber_bracket(&a.alpha, &a.mul, &a.mul).unwrap().is_zero());
        let zero = MultilinearMap::zero(2, 3, 3);
        assert!(gerstenhaber_bracket(&a.alpha, &zero, &a.mul).unwrap().is_zero());
    }

    #[test]
    fn gerstenhaber_detects_invalid_example() {
        let mut mu = MultilinearMap::zero(2, 2, 2);
        mu.set(&[0, 0], &v(&[1, 0]));
        let alpha = Matrix::from_i64(&[&[1, 1], &[0, 0]]);
        assert!(!gerstenhaber_bracket(&alpha, &mu, &mu).unwrap().is_zero());
        let assoc = alpha_associator(&alpha, &mu, &mu).unwrap();
        assert_eq!(assoc.value(&[0, 0, 1]), &v(&[-1, 0])[..]);
    }

    #[test]
    fn nr_bracket_vanishes_on_valid_brackets() {
        let h = fixtures::heisenberg();
        assert!(nr_bracket(&h.alpha, &h.mul, &h.mul).unwrap().is_zero());
        let g = fixtures::g1(rat(2), rat(3));
        assert!(nr_bracket(&g.alpha, &g.mul, &g.mul).unwrap().is_zero());
        let zero = MultilinearMap::zero(2, 3, 3);
        assert!(nr_bracket(&g.alpha, &zero, &g.mul).unwrap().is_zero());
        let g2 = fixtures::g2();
        assert!(!nr_bracket(&g2.alpha, &g2.mul, &g2.mul).unwrap().is_zero());
    }

    #[test]
    fn nr_bracket_of_bracket_is_minus_twice_jacobi() {
        let g2 = fixtures::g2();
        let nr = nr_bracket(&g2.alpha, &g2.mul, &g2.mul).unwrap();
        let jac = cyclic_jacobi(&g2.alpha, &g2.mul, &g2.mul).unwrap();
        assert_eq!(nr, jac.scale(&rat(-2)));
    }

    #[test]
    fn nr_requires_alternating() {
        let a = fixtures::a3(rat(1), rat(1));
        assert_eq!(nr_product(&a.alpha, &a.mul, &a.mul), Err(Error::NonAlternating));
    }

    #[test]
    fn cup_product_spot_value() {
        let phi = fixtures::phi_a3_b2();
        let f = MultilinearMap::from_matrix(&phi.matrix);
        let c = cup_product_assoc(&phi.target.mul, &f, &f).unwrap();
        assert_eq!(c.value(&[0, 0]), &v(&[1, -1])[..]);
        let zero = MultilinearMap::zero(1, 3, 2);
        assert!(cup_product_assoc(&phi.target.mul, &zero, &f).unwrap().is_zero());
    }

    #[test]
    fn cup_bracket_lie_matches_permutation_loop() {
        let phi = fixtures::phi12_2();
        let br = &phi.target.mul;
        let mut f = MultilinearMap::zero(1, 3, 3);
        f.set(&[0], &v(&[1, 0, 1]));
        f.set(&[1], &v(&[0, 2, 0]));
        let mut g = MultilinearMap::zero(1, 3, 3);
        g.set(&[0], &v(&[0, 1, 0]));
        g.set(&[2], &v(&[1, 0, 0]));
        let got = cup_bracket_lie(br, &f, &g).unwrap();
        for t in tuples(2, 3) {
            // S_2 by hand: identity and the swap
            let id = br.eval(&[f.value(&[t[0]]), g.value(&[t[1]])]);
            let sw = br.eval(&[f.value(&[t[1]]), g.value(&[t[0]])]);
            let want: Vec<Rational> = id.iter().zip(&sw).map(|(p, q)| p - q).collect();
            assert_eq!(got.value(&t), &want[..]);
        }
        assert!(got.is_alternating());
    }

    #[test]
    fn overline_composition_examples() {
        let phi = fixtures::phi12_2();
        let mut g = MultilinearMap::zero(1, 3, 3);
        g.set(&[0], &v(&[1, 0, 0]));
        let f = MultilinearMap::from_matrix(&Matrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]));
        let fg = overline_comp(&phi.matrix, &f, &g).unwrap();
        assert_eq!(fg, g.compose_output(&f.to_matrix()));
        let mu = &phi.target.mul;
        let both = overline_comp(&phi.matrix, mu, &g).unwrap();
        for t in tuples(2, 3) {
            let x = phi.matrix.column(t[0]);
            let y = phi.matrix.column(t[1]);
            let p = mu.eval(&[g.value(&[t[0]]), &y]);
            let q = mu.eval(&[&x, g.value(&[t[1]])]);
            let want: Vec<Rational> = p.iter().zip(&q).map(|(a, b)| a + b).collect();
            assert_eq!(both.value(&t), &want[..]);
        }
        assert!(overline_comp(&phi.matrix, &MultilinearMap::zero(2, 3, 3), &g).unwrap().is_zero());
    }

    #[test]
    fn diamond_examples() {
        let phi = fixtures::phi12_1();
        let d = diamond(&phi.target.mul, &phi.matrix).unwrap();
        assert!(d.value(&[0, 1]).iter().all(Zero::is_zero));
        let id = diamond(&phi.target.mul, &Matrix::identity(3)).unwrap();
        assert_eq!(id, phi.target.mul);
    }

    #[test]
    fn derivation_examples() {
        let a = fixtures::a3(rat(1), rat(2));
        let mut f = MultilinearMap::zero(1, 3, 3);
        f.set(&[1], &v(&[0, 1, 0]));
        let d = derivation_d_assoc(&a, &f).unwrap();
        assert_eq!(d.value(&[0, 1]), &v(&[0, -1, 0])[..]);
        // the middle group of δ: remove the two boundary terms
        let mut g = MultilinearMap::zero(2, 3, 3);
        g.set(&[0, 2], &v(&[0, 0, 1]));
        g.set(&[1, 1], &[frac(1, 2), rat(0), rat(0)]);
        let delta = delta_hom_self(&a, &g).unwrap();
        let p = columns(&a.alpha);
        let boundary = MultilinearMap::from_fn(3, 3, 3, |t| {
            let l = a.mul.eval(&[&p[t[0]], g.value(&t[1..])]);
            let r = a.mul.eval(&[g.value(&t[..2]), &p[t[2]]]);
            l.iter().zip(r).map(|(x, y)| x - y).collect()
        });
        assert_eq!(derivation_d_assoc(&a, &g).unwrap(), delta.sub(&boundary));
    }

    #[test]
    fn lie_derivation_single_term() {
        let h = fixtures::heisenberg();
        let mut f = MultilinearMap::zero(1, 3, 3);
        f.set(&[2], &v(&[1, 0, 0]));
        let d = derivation_d_lie(&h, &f).unwrap();
        assert_eq!(d.value(&[0, 1]), &v(&[-1, 0, 0])[..]);
        assert_eq!(h.kind, Kind::Lie);
    }
}
