//! Start systems and start-solution iterators.
//!
//! The total-degree system `γ (x_i^{d_i} - 1)` is solved by roots of unity
//! and indexed by Bézout index. The smooth polynomial interpolation problem
//! gets its start solutions from aperiodic necklaces.

use std::f64::consts::{PI, TAU};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::polysys::{default_names, Monomial, PolySystem, Polynomial, Term};
use crate::C64;

/// Reject an index when `arg(z) d / 2π` is farther than this from an integer.
pub const INDEX_TOLERANCE: f64 = 0.25;

/// The `n`-th roots of unity `exp(2πik/n)`, `k = 0..n`, starting at 1.
#[derive(Clone, Debug)]
pub struct RootsOfUnityIter {
    n: u32,
    state: u32,
}

impl Iterator for RootsOfUnityIter {
    type Item = C64;

    fn next(&mut self) -> Option<C64> {
        if self.state >= self.n {
            return None;
        }
        let k = self.state;
        self.state += 1;
        Some(root_of_unity(k, self.n))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.n - self.state) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for RootsOfUnityIter {}

fn root_of_unity(k: u32, n: u32) -> C64 {
    // exact values on the axes keep products like i^4 exact
    match (4 * k as u64).checked_rem(n as u64) {
        Some(0) => match (4 * k as u64) / n as u64 {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        },
        _ => C64::from_polar(1.0, TAU * k as f64 / n as f64),
    }
}

pub fn roots_of_unity_iter(n: u32) -> Result<RootsOfUnityIter> {
    if n == 0 {
        return Err(Error::InvalidArgument("roots of unity need n >= 1".into()));
    }
    Ok(RootsOfUnityIter { n, state: 0 })
}

fn check_degrees(degrees: &[u32]) -> Result<()> {
    if degrees.is_empty() {
        return Err(Error::InvalidArgument("degree list is empty".into()));
    }
    if degrees.contains(&0) {
        return Err(Error::InvalidArgument("degrees must be at least 1".into()));
    }
    Ok(())
}

/// `γ (x_i^{d_i} - 1)` for `i = 1..n`.
pub fn total_degree_system(degrees: &[u32], gamma: C64) -> Result<PolySystem> {
    check_degrees(degrees)?;
    let n = degrees.len();
    let polys = degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            let mut e = vec![0; n];
            e[i] = d;
            Polynomial::new(
                n,
                0,
                [
                    Term {
                        coeff: gamma,
                        monomial: Monomial::new(e),
                        param_monomial: Monomial::one(0),
                    },
                    Term {
                        coeff: -gamma,
                        monomial: Monomial::one(n),
                        param_monomial: Monomial::one(0),
                    },
                ],
            )
        })
        .collect();
    PolySystem::new(polys, default_names("x", n), vec![])
}

/// Product of the number of roots per coordinate.
pub fn bezout_number(degrees: &[u32]) -> u64 {
    degrees.iter().map(|&d| d as u64).product()
}

/// All tuples of roots of unity, coordinate 1 varying fastest.
#[derive(Clone, Debug)]
pub struct TotalDegreeStarts {
    degrees: Vec<u32>,
    counter: Vec<u32>,
    done: bool,
}

impl Iterator for TotalDegreeStarts {
    type Item = Vec<C64>;

    fn next(&mut self) -> Option<Vec<C64>> {
        if self.done {
            return None;
        }
        let out = self
            .counter
            .iter()
            .zip(&self.degrees)
            .map(|(&k, &d)| root_of_unity(k, d))
            .collect();
        self.done = true;
        for (k, &d) in self.counter.iter_mut().zip(&self.degrees) {
            *k += 1;
            if *k < d {
                self.done = false;
                break;
            }
            *k = 0;
        }
        Some(out)
    }
}

pub fn total_degree_start_iter(degrees: &[u32]) -> Result<TotalDegreeStarts> {
    check_degrees(degrees)?;
    Ok(TotalDegreeStarts {
        degrees: degrees.to_vec(),
        counter: vec![0; degrees.len()],
        done: false,
    })
}

/// Index of each coordinate among the `d_i`-th roots of unity.
pub fn indices_of_entries(z: &[C64], degrees: &[u32]) -> Result<Vec<u32>> {
    if z.len() != degrees.len() {
        return Err(Error::Dimension {
            expected: degrees.len(),
            got: z.len(),
        });
    }
    check_degrees(degrees)?;
    z.iter()
        .zip(degrees)
        .enumerate()
        .map(|(i, (zi, &d))| {
            let scaled = zi.arg() * d as f64 / TAU;
            let k = scaled.round();
            if (scaled - k).abs() > INDEX_TOLERANCE
                || (zi.norm() - 1.0).abs().partial_cmp(&0.5) != Some(std::cmp::Ordering::Less)
            {
                return Err(Error::IndexResolution {
                    coordinate: i,
                    value: format!("{zi}"),
                    degree: d,
                });
            }
            Ok((k as i64).rem_euclid(d as i64) as u32)
        })
        .collect()
}

/// 1-based position of `z` in [`total_degree_start_iter`] order.
pub fn bezout_index(z: &[C64], degrees: &[u32]) -> Result<u64> {
    let ind = indices_of_entries(z, degrees)?;
    let mut stride = 1u64;
    let mut index = 0u64;
    for (&k, &d) in ind.iter().zip(degrees) {
        index += stride * k as u64;
        stride *= d as u64;
    }
    Ok(index + 1)
}

/// An aperiodic binary necklace: white beads are 0, black beads are 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Necklace {
    white: Vec<usize>,
    black: Vec<usize>,
}

impl Necklace {
    /// Builds a necklace from its bead string, validating that it is the
    /// minimal rotation of an aperiodic class.
    pub fn from_bits(bits: &[bool]) -> Result<Necklace> {
        if bits.is_empty() || !is_lyndon(bits) {
            return Err(Error::InvalidArgument(format!(
                "{} is not an aperiodic necklace representative",
                bits_to_string(bits)
            )));
        }
        Ok(Self::from_bits_unchecked(bits))
    }

    fn from_bits_unchecked(bits: &[bool]) -> Necklace {
        let (black, white): (Vec<usize>, Vec<usize>) = (0..bits.len()).partition(|&i| bits[i]);
        Necklace { white, black }
    }

    pub fn white(&self) -> &[usize] {
        &self.white
    }

    pub fn black(&self) -> &[usize] {
        &self.black
    }

    pub fn len(&self) -> usize {
        self.white.len() + self.black.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn bits(&self) -> Vec<bool> {
        let mut bits = vec![false; self.len()];
        for &b in &self.black {
            bits[b] = true;
        }
        bits
    }
}

fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Strictly smaller than every proper rotation: aperiodic and minimal.
fn is_lyndon(bits: &[bool]) -> bool {
    let n = bits.len();
    (1..n).all(|r| {
        let rotated = bits[r..].iter().chain(&bits[..r]);
        bits.iter().lt(rotated)
    })
}

/// Lazily enumerates aperiodic necklaces with `d1` white and `d2` black
/// beads, one lexicographically minimal representative per class, in
/// increasing lexicographic order.
pub fn necklaces_iter(d1: usize, d2: usize) -> impl Iterator<Item = Necklace> {
    let d = d1 + d2;
    // white-position sets in lexicographic order give the bead strings in
    // increasing lexicographic order
    (0..d)
        .combinations(d1)
        .map(move |white| {
            let mut bits = vec![true; d];
            for w in white {
                bits[w] = false;
            }
            bits
        })
        .filter(|bits| is_lyndon(bits))
        .map(|bits| Necklace::from_bits_unchecked(&bits))
}

fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Number of aperiodic necklaces via the Möbius-inverted count.
pub fn necklace_count(d1: usize, d2: usize) -> u128 {
    let (d1, d2) = (d1 as u64, d2 as u64);
    let d = d1 + d2;
    let g = gcd(d1, d2);
    let sum: i128 = (1..=g)
        .filter(|&e| g.is_multiple_of(e))
        .map(|e| mobius(e) as i128 * binomial(d / e, d1 / e) as i128)
        .sum();
    (sum / d as i128) as u128
}

/// Smooth interpolants of bidegree `(d1, d2)` meeting the germ
/// `Σ c_i x^i` to order `d1 + d2 - 1`.
///
/// Variables `a1..a{d1}, b1..b{d2}`, parameters `c1..c{d}`. Equation `k`
/// (for `k < d`) is the `t^k` coefficient of `y(t) - Σ c_i x(t)^i`, where
/// `x(t) = Σ a_j t^j` and `y(t) = Σ b_j t^j`; the last equation is `a1 - 1`.
pub fn polynomial_interpolants(d1: usize, d2: usize) -> Result<PolySystem> {
    if d1 == 0 || d2 == 0 {
        return Err(Error::InvalidArgument(
            "interpolant degrees must be at least 1".into(),
        ));
    }
    let d = d1 + d2;
    let (n, k) = (d, d);
    let zero = Polynomial::zero(n, k);
    let a = |j: usize| Polynomial::variable(j, n, k);
    let b = |j: usize| Polynomial::variable(d1 + j, n, k);
    // truncated series in t; index = power of t, entries 0..d
    let mut x_series = vec![zero.clone(); d];
    for j in 0..d1.min(d - 1) {
        x_series[j + 1] = a(j);
    }
    let mut rhs = vec![zero.clone(); d];
    for j in 0..d2.min(d - 1) {
        rhs[j + 1] = b(j);
    }
    let mut power = x_series.clone();
    for i in 0..d {
        if i > 0 {
            power = series_mul(&power, &x_series);
        }
        let c = Polynomial::parameter(i, n, k);
        for (r, p) in rhs.iter_mut().zip(&power) {
            if !p.is_zero() {
                *r = &*r - &(&c * p);
            }
        }
    }
    let mut polys: Vec<Polynomial> = rhs.into_iter().skip(1).collect();
    polys.push(&a(0) - &Polynomial::constant(C64::new(1.0, 0.0), n, k));
    let vars = (1..=d1)
        .map(|i| format!("a{i}"))
        .chain((1..=d2).map(|i| format!("b{i}")))
        .collect();
    PolySystem::new(polys, vars, default_names("c", d))
}

fn series_mul(p: &[Polynomial], q: &[Polynomial]) -> Vec<Polynomial> {
    let len = p.len();
    let mut out = vec![Polynomial::zero(p[0].nvars(), p[0].nparams()); len];
    for (i, pi) in p.iter().enumerate().filter(|(_, pi)| !pi.is_zero()) {
        for (j, qj) in q
            .iter()
            .enumerate()
            .take(len - i)
            .filter(|(_, qj)| !qj.is_zero())
        {
            out[i + j] = &out[i + j] + &(pi * qj);
        }
    }
    out
}

/// Germ parameters `c_i = (-1)^i` of `1/(x+1) - 1` at which necklace
/// solutions are exact.
pub fn necklace_parameters(d: usize) -> Vec<C64> {
    (1..=d)
        .map(|i| C64::new(if i % 2 == 0 { 1.0 } else { -1.0 }, 0.0))
        .collect()
}

/// Which `d`-th roots the beads are placed on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BeadRoots {
    /// `exp(iπ(2k+1)/d)`, the roots of `-1`.
    MinusOne,
    /// `exp(2πik/d)` with 1-based `k`, the roots of `+1`.
    PlusOne,
}

/// Convention used by [`solution_from_necklace`]; both satisfy the
/// interpolation system at [`necklace_parameters`], see the tests.
pub const BEAD_ROOTS: BeadRoots = BeadRoots::MinusOne;

fn bead_root(position: usize, d: usize, roots: BeadRoots) -> C64 {
    match roots {
        BeadRoots::MinusOne => C64::from_polar(1.0, PI * (2 * position + 1) as f64 / d as f64),
        BeadRoots::PlusOne => C64::from_polar(1.0, TAU * (position + 1) as f64 / d as f64),
    }
}

/// Coefficients of `t^1..t^m` in `Π (ρ t + 1) - 1`.
fn product_coefficients(roots: impl Iterator<Item = C64>) -> Vec<C64> {
    let mut coeffs = vec![C64::new(1.0, 0.0)];
    for r in roots {
        coeffs.push(C64::new(0.0, 0.0));
        for j in (1..coeffs.len()).rev() {
            let prev = coeffs[j - 1];
            coeffs[j] += r * prev;
        }
    }
    coeffs.remove(0);
    coeffs
}

/// The start solution `(a, b)` attached to a necklace, normalized to `a1 = 1`.
pub fn solution_from_necklace(necklace: &Necklace) -> Result<Vec<C64>> {
    solution_from_necklace_with(necklace, BEAD_ROOTS)
}

pub fn solution_from_necklace_with(necklace: &Necklace, roots: BeadRoots) -> Result<Vec<C64>> {
    let d = necklace.len();
    let a = product_coefficients(necklace.white.iter().map(|&k| bead_root(k, d, roots)));
    let b = product_coefficients(necklace.black.iter().map(|&k| bead_root(k, d, roots)));
    let a1 = a.first().copied().unwrap_or_default();
    if a1.norm() < 1e-12 {
        return Err(Error::InvalidArgument(
            "necklace curve has a1 = 0 and cannot be normalized".into(),
        ));
    }
    let r = a1.inv();
    let scaled = |v: Vec<C64>| {
        v.into_iter()
            .enumerate()
            .map(|(i, c)| c * r.powu(i as u32 + 1))
            .collect::<Vec<_>>()
    };
    let mut out = scaled(a);
    out.extend(scaled(b));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{distance, norm2};
    use std::collections::HashSet;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn roots_of_unity() {
        let one: Vec<_> = roots_of_unity_iter(1).unwrap().collect();
        assert_eq!(one, vec![c(1.0, 0.0)]);
        let four: Vec<_> = roots_of_unity_iter(4).unwrap().collect();
        assert_eq!(
            four,
            vec![c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)]
        );
        let prod: C64 = roots_of_unity_iter(3).unwrap().product();
        assert!((prod - c(1.0, 0.0)).norm() < 1e-15);
        assert!(roots_of_unity_iter(0).is_err());
    }

    #[test]
    fn total_degree_systems() {
        let f = total_degree_system(&[2, 2], c(1.0, 0.0)).unwrap();
        let x = Polynomial::variable(0, 2, 0);
        let y = Polynomial::variable(1, 2, 0);
        let one = Polynomial::constant(c(1.0, 0.0), 2, 0);
        assert_eq!(f.polynomials(), &[&x.pow(2) - &one, &y.pow(2) - &one]);
        let g = total_degree_system(&[1], c(1.0, 0.0)).unwrap();
        assert_eq!(
            g.polynomials()[0],
            &Polynomial::variable(0, 1, 0) - &Polynomial::constant(c(1.0, 0.0), 1, 0)
        );
        assert!(total_degree_system(&[], c(1.0, 0.0)).is_err());
        assert!(total_degree_system(&[2, 0], c(1.0, 0.0)).is_err());
    }

    #[test]
    fn total_degree_starts() {
        let s: Vec<_> = total_degree_start_iter(&[2]).unwrap().collect();
        assert_eq!(s, vec![vec![c(1.0, 0.0)], vec![c(-1.0, 0.0)]]);
        let s: Vec<_> = total_degree_start_iter(&[2, 2]).unwrap().collect();
        assert_eq!(s.len(), 4);
        assert_eq!(s[0], vec![c(1.0, 0.0), c(1.0, 0.0)]);
        for degrees in [vec![2, 3], vec![3, 1, 4], vec![5]] {
            let gamma = c(0.6, -0.8);
            let f = total_degree_system(&degrees, gamma).unwrap();
            let starts: Vec<_> = total_degree_start_iter(&degrees).unwrap().collect();
            assert_eq!(starts.len() as u64, bezout_number(&degrees));
            for z in &starts {
                assert!(norm2(&f.evaluate(z, None).unwrap()) < 1e-12);
            }
        }
    }

    #[test]
    fn indices_and_bezout_index() {
        assert_eq!(
            indices_of_entries(&[c(1.0, 0.0), c(1.0, 0.0)], &[2, 2]).unwrap(),
            vec![0, 0]
        );
        assert_eq!(
            indices_of_entries(&[c(-1.0, 0.0), c(1.0, 0.0)], &[2, 2]).unwrap(),
            vec![1, 0]
        );
        assert_eq!(indices_of_entries(&[c(0.0, 1.0)], &[4]).unwrap(), vec![1]);
        assert_eq!(
            bezout_index(&[c(1.0, 0.0), c(1.0, 0.0)], &[2, 2]).unwrap(),
            1
        );
        // ind = (1, 0): 1 + 2*0 + 1
        assert_eq!(
            bezout_index(&[c(-1.0, 0.0), c(1.0, 0.0)], &[2, 2]).unwrap(),
            2
        );
        let pos = total_degree_start_iter(&[2, 2])
            .unwrap()
            .position(|z| z == vec![c(-1.0, 0.0), c(1.0, 0.0)])
            .unwrap();
        assert_eq!(pos + 1, 2);
        // index just off a root is still resolved, halfway between two is not
        assert_eq!(
            indices_of_entries(&[C64::from_polar(1.0, -1e-9)], &[3]).unwrap(),
            vec![0]
        );
        assert!(indices_of_entries(&[C64::from_polar(1.0, PI / 4.0)], &[4]).is_err());
        assert!(indices_of_entries(&[c(1.0, 0.0)], &[2, 2]).is_err());
    }

    #[test]
    fn bezout_index_round_trip() {
        for degrees in [vec![2, 3, 2], vec![7], vec![4, 5, 3, 2], vec![10, 10, 10]] {
            for (k, z) in total_degree_start_iter(&degrees).unwrap().enumerate() {
                assert_eq!(bezout_index(&z, &degrees).unwrap(), k as u64 + 1);
            }
        }
    }

    /// Aperiodic rotation classes by exhaustive enumeration of bit strings.
    fn brute_force_necklaces(d1: usize, d2: usize) -> HashSet<Vec<bool>> {
        let d = d1 + d2;
        let mut classes = HashSet::new();
        for word in 0u32..(1 << d) {
            let bits: Vec<bool> = (0..d).map(|i| word >> (d - 1 - i) & 1 == 1).collect();
            if bits.iter().filter(|&&b| b).count() != d2 {
                continue;
            }
            let rotations: Vec<Vec<bool>> = (0..d)
                .map(|r| bits[r..].iter().chain(&bits[..r]).copied().collect())
                .collect();
            let distinct: HashSet<_> = rotations.iter().cloned().collect();
            if distinct.len() == d {
                classes.insert(rotations.into_iter().min().unwrap());
            }
        }
        classes
    }

    #[test]
    fn necklace_enumeration_matches_brute_force() {
        for d in 2..=12 {
            for d1 in 1..d {
                let d2 = d - d1;
                let listed: Vec<Vec<bool>> = necklaces_iter(d1, d2).map(|n| n.bits()).collect();
                let expected = brute_force_necklaces(d1, d2);
                assert_eq!(listed.len(), expected.len(), "({d1}, {d2})");
                assert_eq!(listed.iter().cloned().collect::<HashSet<_>>(), expected);
                assert_eq!(
                    necklace_count(d1, d2),
                    expected.len() as u128,
                    "({d1}, {d2})"
                );
                assert!(listed.windows(2).all(|w| w[0] < w[1]));
                for bits in &listed {
                    assert!(Necklace::from_bits(bits).is_ok());
                }
            }
        }
    }

    #[test]
    fn necklace_counts() {
        assert_eq!(necklace_count(4, 4), 8);
        assert_eq!(necklace_count(1, 1), 1);
        assert_eq!(necklace_count(2, 2), 1);
        assert_eq!(necklace_count(3, 3), 3);
        assert_eq!(necklaces_iter(4, 4).count(), 8);
        assert_eq!(necklaces_iter(1, 1).count(), 1);
        assert_eq!(necklaces_iter(2, 2).count(), 1);
    }

    #[test]
    fn necklaces_are_aperiodic() {
        for n in necklaces_iter(5, 4) {
            let bits = n.bits();
            let period = (1..=bits.len())
                .find(|&p| {
                    bits.len() % p == 0
                        && (0..bits.len()).all(|i| bits[i] == bits[(i + p) % bits.len()])
                })
                .unwrap();
            assert_eq!(period, bits.len());
        }
        assert!(Necklace::from_bits(&[false, true, false, true]).is_err());
        assert!(Necklace::from_bits(&[true, false]).is_err());
    }

    #[test]
    fn interpolant_shapes() {
        let f = polynomial_interpolants(1, 1).unwrap();
        assert_eq!((f.nvars(), f.polynomials().len(), f.nparams()), (2, 2, 2));
        let f = polynomial_interpolants(4, 4).unwrap();
        assert_eq!((f.nvars(), f.polynomials().len(), f.nparams()), (8, 8, 8));
        assert!(polynomial_interpolants(0, 3).is_err());
    }

    #[test]
    fn first_interpolant_equation_is_linear() {
        for (d1, d2) in [(1, 1), (2, 3), (4, 4)] {
            let d = d1 + d2;
            let f = polynomial_interpolants(d1, d2).unwrap();
            // b1 - c1 a1
            let b1 = Polynomial::variable(d1, d, d);
            let a1 = Polynomial::variable(0, d, d);
            let c1 = Polynomial::parameter(0, d, d);
            assert_eq!(f.polynomials()[0], &b1 - &(&c1 * &a1));
        }
    }

    #[test]
    fn interpolant_equations_match_series_expansion() {
        // at a random point, compare against direct numeric series arithmetic
        let (d1, d2) = (3, 2);
        let d = d1 + d2;
        let f = polynomial_interpolants(d1, d2).unwrap();
        let x: Vec<C64> = (0..d)
            .map(|i| c(0.3 * i as f64 - 0.5, 0.1 * i as f64))
            .collect();
        let p: Vec<C64> = (0..d)
            .map(|i| c(1.0 / (i + 1) as f64, -0.2 * i as f64))
            .collect();
        let mut xs = vec![c(0.0, 0.0); d];
        xs[1..=d1].copy_from_slice(&x[..d1]);
        let mut series = vec![c(0.0, 0.0); d];
        series[1..=d2].copy_from_slice(&x[d1..]);
        let mut pow = vec![c(0.0, 0.0); d];
        pow[0] = c(1.0, 0.0);
        for ci in &p {
            let mut next = vec![c(0.0, 0.0); d];
            for i in 0..d {
                for j in 0..d - i {
                    next[i + j] += pow[i] * xs[j];
                }
            }
            pow = next;
            for (s, v) in series.iter_mut().zip(&pow) {
                *s -= ci * v;
            }
        }
        let got = f.evaluate(&x, Some(&p)).unwrap();
        for k in 1..d {
            assert!((got[k - 1] - series[k]).norm() < 1e-12, "t^{k}");
        }
        assert!((got[d - 1] - (x[0] - 1.0)).norm() < 1e-15);
    }

    #[test]
    fn necklace_solutions_satisfy_interpolation_system() {
        for (d1, d2) in [(4, 4), (2, 3), (3, 2), (1, 1), (5, 3)] {
            let d = d1 + d2;
            let f = polynomial_interpolants(d1, d2).unwrap();
            let params = necklace_parameters(d);
            for roots in [BeadRoots::MinusOne, BeadRoots::PlusOne] {
                let sols: Vec<Vec<C64>> = necklaces_iter(d1, d2)
                    .map(|n| solution_from_necklace_with(&n, roots).unwrap())
                    .collect();
                for s in &sols {
                    let r = norm2(&f.evaluate(s, Some(&params)).unwrap());
                    assert!(r < 1e-8, "({d1},{d2}) {roots:?}: residual {r}");
                }
                for (i, j) in (0..sols.len()).tuple_combinations() {
                    assert!(distance(&sols[i], &sols[j]) > 1e-6);
                }
            }
        }
    }

    #[test]
    fn degenerate_necklace_normalization_fails() {
        // one white bead on a root of -1 with d = 2: a1 = exp(iπ/2) is fine,
        // but an x(t) built from opposite roots has a1 = 0
        let n = Necklace {
            white: vec![0, 1],
            black: vec![],
        };
        assert!(solution_from_necklace(&n).is_err());
    }
}
