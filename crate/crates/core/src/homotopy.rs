//! Homotopies `H(x; t)` with `H(·; 1)` the start system and `H(·; 0)` the
//! target system.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::polysys::{PolySystem, Support};
use crate::C64;

/// Coefficientwise tolerance when gluing two homotopies end to end.
pub const CONCAT_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug)]
pub enum HomotopyKind {
    /// `(1 - t) F + gamma t G`
    StraightLine {
        target: Arc<PolySystem>,
        start: Arc<PolySystem>,
        gamma: C64,
    },
    /// `F(x; (1 - t) p + t q)`
    Parameter {
        system: Arc<PolySystem>,
        start_params: Vec<C64>,
        target_params: Vec<C64>,
    },
    /// Linear interpolation of the coefficients on a fixed support.
    Coefficient {
        support: Arc<Support>,
        c_start: Vec<C64>,
        c_target: Vec<C64>,
        start: Arc<PolySystem>,
        target: Arc<PolySystem>,
    },
    /// `first` on `t ∈ [1/2, 1]`, then `second` on `t ∈ [0, 1/2]`.
    Concatenation(Box<Homotopy>, Box<Homotopy>),
}

#[derive(Clone, Debug)]
pub struct Homotopy {
    kind: HomotopyKind,
    nvars: usize,
}

/// `H`, `∂H/∂x` and `∂H/∂t` at one point.
pub(crate) struct Evaluation {
    pub value: Vec<C64>,
    pub dx: CMatrix,
    pub dt: Vec<C64>,
}

fn require_parameter_free(f: &PolySystem, role: &str) -> Result<()> {
    if f.is_parameterized() {
        return Err(Error::Shape(format!(
            "{role} system must not have parameters"
        )));
    }
    Ok(())
}

impl Homotopy {
    pub fn straight_line(target: PolySystem, start: PolySystem, gamma: C64) -> Result<Self> {
        if gamma == C64::new(0.0, 0.0) {
            return Err(Error::InvalidArgument("gamma must be nonzero".into()));
        }
        require_parameter_free(&target, "target")?;
        require_parameter_free(&start, "start")?;
        if target.nvars() != start.nvars() {
            return Err(Error::Shape(format!(
                "target has {} variables, start has {}",
                target.nvars(),
                start.nvars()
            )));
        }
        Ok(Homotopy {
            nvars: target.nvars(),
            kind: HomotopyKind::StraightLine {
                target: Arc::new(target),
                start: Arc::new(start),
                gamma,
            },
        })
    }

    /// Parameter homotopy running from `start_params` at `t = 1` to
    /// `target_params` at `t = 0`.
    pub fn parameter(
        system: PolySystem,
        start_params: Vec<C64>,
        target_params: Vec<C64>,
    ) -> Result<Self> {
        if !system.is_parameterized() {
            return Err(Error::Shape(
                "parameter homotopy needs a parameterized system".into(),
            ));
        }
        for v in [&start_params, &target_params] {
            if v.len() != system.nparams() {
                return Err(Error::Dimension {
                    expected: system.nparams(),
                    got: v.len(),
                });
            }
        }
        Ok(Homotopy {
            nvars: system.nvars(),
            kind: HomotopyKind::Parameter {
                system: Arc::new(system),
                start_params,
                target_params,
            },
        })
    }

    pub fn coefficient(support: Support, c_start: Vec<C64>, c_target: Vec<C64>) -> Result<Self> {
        let start = support.system_with(&c_start)?;
        let target = support.system_with(&c_target)?;
        Ok(Homotopy {
            nvars: support.nvars(),
            kind: HomotopyKind::Coefficient {
                support: Arc::new(support),
                c_start,
                c_target,
                start: Arc::new(start),
                target: Arc::new(target),
            },
        })
    }

    /// `first` followed by `second`; requires `first(·; 0) = second(·; 1)`.
    pub fn concatenate(first: Homotopy, second: Homotopy) -> Result<Self> {
        if first.nvars != second.nvars {
            return Err(Error::Shape(format!(
                "cannot concatenate homotopies in {} and {} variables",
                first.nvars, second.nvars
            )));
        }
        let gap = first
            .target_system()
            .coefficient_distance(&second.start_system())
            .ok_or_else(|| Error::Shape("endpoint systems have different shapes".into()))?;
        if gap > CONCAT_TOLERANCE {
            return Err(Error::Shape(format!(
                "endpoint systems differ by {gap:e} coefficientwise"
            )));
        }
        Ok(Homotopy {
            nvars: first.nvars,
            kind: HomotopyKind::Concatenation(Box::new(first), Box::new(second)),
        })
    }

    pub fn kind(&self) -> &HomotopyKind {
        &self.kind
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// The system `H(·; 1)`.
    pub fn start_system(&self) -> PolySystem {
        match &self.kind {
            HomotopyKind::StraightLine { start, gamma, .. } => start.scale(*gamma),
            HomotopyKind::Parameter {
                system,
                start_params,
                ..
            } => system
                .specialize(start_params)
                .expect("checked at construction"),
            HomotopyKind::Coefficient { start, .. } => (**start).clone(),
            HomotopyKind::Concatenation(first, _) => first.start_system(),
        }
    }

    /// The system `H(·; 0)`.
    pub fn target_system(&self) -> PolySystem {
        match &self.kind {
            HomotopyKind::StraightLine { target, .. } => (**target).clone(),
            HomotopyKind::Parameter {
                system,
                target_params,
                ..
            } => system
                .specialize(target_params)
                .expect("checked at construction"),
            HomotopyKind::Coefficient { target, .. } => (**target).clone(),
            HomotopyKind::Concatenation(_, second) => second.target_system(),
        }
    }

    fn check(&self, x: &[C64], t: f64) -> Result<()> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::InvalidArgument(format!("t = {t} outside [0, 1]")));
        }
        if x.len() != self.nvars {
            return Err(Error::Dimension {
                expected: self.nvars,
                got: x.len(),
            });
        }
        Ok(())
    }

    pub fn evaluate(&self, x: &[C64], t: f64) -> Result<Vec<C64>> {
        self.check(x, t)?;
        Ok(self.eval_all(x, t).value)
    }

    #[allow(non_snake_case)]
    pub fn dH_dx(&self, x: &[C64], t: f64) -> Result<CMatrix> {
        self.check(x, t)?;
        Ok(self.eval_all(x, t).dx)
    }

    #[allow(non_snake_case)]
    pub fn dH_dt(&self, x: &[C64], t: f64) -> Result<Vec<C64>> {
        self.check(x, t)?;
        Ok(self.eval_all(x, t).dt)
    }

    /// Unchecked evaluation of the value and both derivatives.
    pub(crate) fn eval_all(&self, x: &[C64], t: f64) -> Evaluation {
        match &self.kind {
            HomotopyKind::StraightLine {
                target,
                start,
                gamma,
            } => {
                let (f, fx) = target.eval_jacobian_raw(x, &[]);
                let (g, gx) = start.eval_jacobian_raw(x, &[]);
                let a = C64::new(1.0 - t, 0.0);
                let b = gamma * t;
                let value = f.iter().zip(&g).map(|(fi, gi)| a * fi + b * gi).collect();
                let dt = f.iter().zip(&g).map(|(fi, gi)| gamma * gi - fi).collect();
                let mut dx = fx;
                dx.scale(a);
                dx.add_scaled(&gx, b);
                Evaluation { value, dx, dt }
            }
            HomotopyKind::Parameter {
                system,
                start_params,
                target_params,
            } => {
                let p: Vec<C64> = target_params
                    .iter()
                    .zip(start_params)
                    .map(|(pt, ps)| pt * (1.0 - t) + ps * t)
                    .collect();
                let (value, dx) = system.eval_jacobian_raw(x, &p);
                let dp: Vec<C64> = start_params
                    .iter()
                    .zip(target_params)
                    .map(|(ps, pt)| ps - pt)
                    .collect();
                let dt = system.param_jacobian_raw(x, &p).mul_vec(&dp);
                Evaluation { value, dx, dt }
            }
            HomotopyKind::Coefficient { start, target, .. } => {
                let (f, fx) = target.eval_jacobian_raw(x, &[]);
                let (g, gx) = start.eval_jacobian_raw(x, &[]);
                let value = f
                    .iter()
                    .zip(&g)
                    .map(|(fi, gi)| fi * (1.0 - t) + gi * t)
                    .collect();
                let dt = f.iter().zip(&g).map(|(fi, gi)| gi - fi).collect();
                let mut dx = fx;
                dx.scale(C64::new(1.0 - t, 0.0));
                dx.add_scaled(&gx, C64::new(t, 0.0));
                Evaluation { value, dx, dt }
            }
            HomotopyKind::Concatenation(first, second) => {
                let mut e = if t >= 0.5 {
                    first.eval_all(x, 2.0 * t - 1.0)
                } else {
                    second.eval_all(x, 2.0 * t)
                };
                e.dt.iter_mut().for_each(|v| *v *= 2.0);
                e
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polysys::{Monomial, Polynomial, Term};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn univariate(coeffs: &[f64]) -> PolySystem {
        // coeffs[k] multiplies x^k
        let f = Polynomial::new(
            1,
            0,
            coeffs.iter().enumerate().map(|(k, &v)| Term {
                coeff: c(v),
                monomial: Monomial::new(vec![k as u32]),
                param_monomial: Monomial::one(0),
            }),
        );
        PolySystem::new(vec![f], vec!["x".into()], vec![]).unwrap()
    }

    /// {y - x^2 + p, y - x^3 - p}
    pub(crate) fn curve_pair() -> PolySystem {
        let x = Polynomial::variable(0, 2, 1);
        let y = Polynomial::variable(1, 2, 1);
        let p = Polynomial::parameter(0, 2, 1);
        PolySystem::new(
            vec![&(&y - &x.pow(2)) + &p, &(&y - &x.pow(3)) - &p],
            vec!["x".into(), "y".into()],
            vec!["p".into()],
        )
        .unwrap()
    }

    fn random_system(rng: &mut ChaCha8Rng, n: usize, deg: u32) -> PolySystem {
        let polys = (0..n)
            .map(|_| {
                let terms = (0..6).map(|_| {
                    let mut e = vec![0u32; n];
                    for _ in 0..rng.gen_range(0..=deg) {
                        e[rng.gen_range(0..n)] += 1;
                    }
                    Term {
                        coeff: C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                        monomial: Monomial::new(e),
                        param_monomial: Monomial::one(0),
                    }
                });
                Polynomial::new(n, 0, terms)
            })
            .collect();
        PolySystem::new(polys, crate::polysys::default_names("x", n), vec![]).unwrap()
    }

    fn close(a: &[C64], b: &[C64], tol: f64) -> bool {
        a.iter()
            .zip(b)
            .all(|(x, y)| (x - y).norm() <= tol * (1.0 + x.norm()))
    }

    fn check_derivatives(h: &Homotopy, x: &[C64], t: f64) {
        let step = 1e-6;
        let dx = h.dH_dx(x, t).unwrap();
        let scale = dx
            .to_rows()
            .iter()
            .flatten()
            .map(|v| v.norm())
            .fold(1.0, f64::max);
        for j in 0..x.len() {
            let mut xp = x.to_vec();
            let mut xm = x.to_vec();
            xp[j] += step;
            xm[j] -= step;
            let fp = h.evaluate(&xp, t).unwrap();
            let fm = h.evaluate(&xm, t).unwrap();
            for i in 0..x.len() {
                let fd = (fp[i] - fm[i]) / (2.0 * step);
                assert!(
                    (fd - dx[(i, j)]).norm() <= 1e-6 * scale,
                    "dx ({i},{j}) at t={t}"
                );
            }
        }
        // one-sided near the ends, central inside; stay within one piece of a concatenation
        let dt = h.dH_dt(x, t).unwrap();
        let (lo, hi) = if t == 0.5 {
            (t, t + step)
        } else {
            ((t - step).max(0.0), (t + step).min(1.0))
        };
        let fp = h.evaluate(x, hi).unwrap();
        let fm = h.evaluate(x, lo).unwrap();
        let dscale = dt.iter().map(|v| v.norm()).fold(1.0, f64::max);
        for i in 0..x.len() {
            let fd = (fp[i] - fm[i]) / (hi - lo);
            assert!(
                (fd - dt[i]).norm() <= 1e-6 * dscale,
                "dt {i} at t={t}: {fd} vs {}",
                dt[i]
            );
        }
    }

    #[test]
    fn straight_line_endpoints() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = random_system(&mut rng, 3, 3);
        let g = random_system(&mut rng, 3, 3);
        let gamma = C64::new(0.6, 0.8);
        let h = Homotopy::straight_line(f.clone(), g.clone(), gamma).unwrap();
        let x = vec![C64::new(0.3, -0.2), c(1.1), C64::new(-0.5, 0.4)];
        assert_eq!(h.evaluate(&x, 0.0).unwrap(), f.evaluate(&x, None).unwrap());
        let g1: Vec<C64> = g
            .evaluate(&x, None)
            .unwrap()
            .iter()
            .map(|v| gamma * v)
            .collect();
        assert!(close(&h.evaluate(&x, 1.0).unwrap(), &g1, 1e-15));
        let dt = h.dH_dt(&x, 0.3).unwrap();
        let fx = f.evaluate(&x, None).unwrap();
        let expect: Vec<C64> = g1.iter().zip(&fx).map(|(a, b)| a - b).collect();
        assert!(close(&dt, &expect, 1e-15));
        assert!(Homotopy::straight_line(f.clone(), g, c(0.0)).is_err());
        assert!(Homotopy::straight_line(f, univariate(&[1.0]), c(1.0)).is_err());
    }

    #[test]
    fn straight_line_midpoint_value() {
        let h = Homotopy::straight_line(
            univariate(&[-4.0, 0.0, 1.0]),
            univariate(&[-1.0, 0.0, 1.0]),
            c(1.0),
        )
        .unwrap();
        assert_eq!(h.evaluate(&[c(0.0)], 0.5).unwrap(), vec![c(-2.5)]);
        assert!(h.evaluate(&[c(0.0)], 1.5).is_err());
        assert!(h.evaluate(&[c(0.0), c(0.0)], 0.5).is_err());
    }

    #[test]
    fn parameter_homotopy_endpoints() {
        let f = curve_pair();
        let h = Homotopy::parameter(f.clone(), vec![c(0.0)], vec![c(-1.0)]).unwrap();
        let x = [C64::new(0.7, 0.1), c(-0.4)];
        assert_eq!(
            h.evaluate(&x, 1.0).unwrap(),
            f.evaluate(&x, Some(&[c(0.0)])).unwrap()
        );
        assert_eq!(
            h.evaluate(&x, 0.0).unwrap(),
            f.evaluate(&x, Some(&[c(-1.0)])).unwrap()
        );
        assert_eq!(
            h.evaluate(&x, 0.5).unwrap(),
            f.evaluate(&x, Some(&[c(-0.5)])).unwrap()
        );
        assert_eq!(h.start_system(), f.specialize(&[c(0.0)]).unwrap());
        assert_eq!(h.target_system(), f.specialize(&[c(-1.0)]).unwrap());

        let flat = Homotopy::parameter(f.clone(), vec![c(2.0)], vec![c(2.0)]).unwrap();
        assert!(flat.dH_dt(&x, 0.3).unwrap().iter().all(|v| v.norm() == 0.0));
        assert_eq!(
            flat.evaluate(&x, 0.2).unwrap(),
            flat.evaluate(&x, 0.9).unwrap()
        );

        assert!(Homotopy::parameter(f.clone(), vec![], vec![c(0.0)]).is_err());
        assert!(Homotopy::parameter(univariate(&[1.0, 1.0]), vec![], vec![]).is_err());
    }

    #[test]
    fn coefficient_homotopy_interpolates() {
        let support = Support::new(
            1,
            vec![vec![Monomial::new(vec![0]), Monomial::new(vec![1])]],
        )
        .unwrap();
        let h = Homotopy::coefficient(support.clone(), vec![c(0.0), c(1.0)], vec![c(-2.0), c(1.0)])
            .unwrap();
        for x in [c(0.0), c(2.5), C64::new(1.0, -3.0)] {
            assert_eq!(h.evaluate(&[x], 0.5).unwrap(), vec![x - 1.0]);
            assert_eq!(h.evaluate(&[x], 1.0).unwrap(), vec![x]);
            assert_eq!(h.evaluate(&[x], 0.0).unwrap(), vec![x - 2.0]);
        }
        assert!(Homotopy::coefficient(support, vec![c(1.0)], vec![c(1.0), c(2.0)]).is_err());
    }

    #[test]
    fn concatenation_piecewise() {
        let f = curve_pair();
        let h1 = Homotopy::parameter(f.clone(), vec![c(0.0)], vec![c(-1.0)]).unwrap();
        let h2 = Homotopy::parameter(f.clone(), vec![c(-1.0)], vec![c(-2.0)]).unwrap();
        let hc = Homotopy::concatenate(h1.clone(), h2.clone()).unwrap();
        let x = [C64::new(0.2, 0.3), c(1.5)];
        assert_eq!(hc.evaluate(&x, 1.0).unwrap(), h1.evaluate(&x, 1.0).unwrap());
        assert_eq!(hc.evaluate(&x, 0.0).unwrap(), h2.evaluate(&x, 0.0).unwrap());
        assert_eq!(
            hc.evaluate(&x, 0.75).unwrap(),
            h1.evaluate(&x, 0.5).unwrap()
        );
        assert_eq!(
            hc.evaluate(&x, 0.25).unwrap(),
            h2.evaluate(&x, 0.5).unwrap()
        );
        let d1: Vec<C64> = h1.dH_dt(&x, 0.5).unwrap().iter().map(|v| v * 2.0).collect();
        assert_eq!(hc.dH_dt(&x, 0.75).unwrap(), d1);
        // endpoints disagree
        assert!(Homotopy::concatenate(h2, h1).is_err());
    }

    #[test]
    fn concatenation_is_associative_up_to_reparameterization() {
        let f = curve_pair();
        let seg = |a: f64, b: f64| Homotopy::parameter(f.clone(), vec![c(a)], vec![c(b)]).unwrap();
        let (h1, h2, h3) = (seg(0.0, -1.0), seg(-1.0, -2.0), seg(-2.0, 0.5));
        let left = Homotopy::concatenate(
            Homotopy::concatenate(h1.clone(), h2.clone()).unwrap(),
            h3.clone(),
        )
        .unwrap();
        let right = Homotopy::concatenate(h1, Homotopy::concatenate(h2, h3).unwrap()).unwrap();
        let x = [C64::new(0.4, -0.1), C64::new(-0.3, 0.9)];
        // left: segments on [3/4,1], [1/2,3/4], [0,1/2]; right: [1/2,1], [1/4,1/2], [0,1/4]
        for s in [0.1, 0.5, 0.9] {
            let pairs = [
                (0.75 + 0.25 * s, 0.5 + 0.5 * s),
                (0.5 + 0.25 * s, 0.25 + 0.25 * s),
                (0.5 * s, 0.25 * s),
            ];
            for (tl, tr) in pairs {
                assert!(close(
                    &left.evaluate(&x, tl).unwrap(),
                    &right.evaluate(&x, tr).unwrap(),
                    1e-14
                ));
            }
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let x: Vec<C64> = (0..3)
            .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let f = random_system(&mut rng, 3, 3);
        let g = random_system(&mut rng, 3, 3);
        let sl = Homotopy::straight_line(f.clone(), g.clone(), C64::new(0.6, -0.8)).unwrap();
        let support = f.support();
        let cf: Vec<C64> = f
            .polynomials()
            .iter()
            .flat_map(|p| p.terms().iter().map(|t| t.coeff))
            .collect();
        let cg: Vec<C64> = (0..cf.len())
            .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let coef = Homotopy::coefficient(support, cg, cf).unwrap();
        for t in [0.0, 0.3, 0.77, 1.0] {
            check_derivatives(&sl, &x, t);
            check_derivatives(&coef, &x, t);
        }

        let cp = curve_pair();
        let xp = &x[..2];
        let h1 = Homotopy::parameter(cp.clone(), vec![C64::new(0.3, 0.2)], vec![c(-1.0)]).unwrap();
        let h2 = Homotopy::parameter(cp, vec![c(-1.0)], vec![C64::new(0.5, -1.0)]).unwrap();
        for t in [0.0, 0.4, 1.0] {
            check_derivatives(&h1, xp, t);
        }
        let hc = Homotopy::concatenate(h1, h2).unwrap();
        for t in [0.25, 0.5, 0.75] {
            check_derivatives(&hc, xp, t);
        }
    }
}
