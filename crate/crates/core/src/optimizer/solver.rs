//! Bound-constrained smooth minimizers used for the inner augmented
//! Lagrangian subproblems.

use std::collections::VecDeque;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct LineSearch {
    pub armijo: f64,
    pub shrink: f64,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct InnerOutcome {
    pub iterations: usize,
    pub converged: bool,
    pub stationarity: f64,
}

/// Objective with gradient over a convex feasible set.
pub(crate) trait Smooth {
    fn eval(&mut self, x: &[f64], g: &mut [f64]) -> f64;
    /// Maps `x` onto the feasible set; true if it moved.
    fn project(&self, x: &mut [f64]) -> bool;
    /// Removes the components of a step `d` that leave the feasible set at `x`.
    fn tangent(&self, x: &[f64], d: &mut [f64]);
    fn stationarity(&self, x: &[f64], g: &[f64]) -> f64;
}

/// The gradient with components blocked by active constraints removed.
pub(crate) fn projected_gradient<P: Smooth + ?Sized>(p: &P, x: &[f64], g: &[f64]) -> Vec<f64> {
    let mut d: Vec<f64> = g.iter().map(|v| -v).collect();
    p.tangent(x, &mut d);
    d.iter_mut().for_each(|v| *v = -*v);
    d
}

struct Step {
    x: Vec<f64>,
    g: Vec<f64>,
    f: f64,
}

/// Backtracking from `alpha` along `d`; `None` once the step underflows.
/// Besides the Armijo rule, a step is accepted when the objective changed by
/// no more than round-off and the slope has not overshot, which keeps
/// progress going once decreases fall below floating-point resolution.
fn backtrack<P: Smooth>(
    p: &mut P,
    x: &[f64],
    f: f64,
    g: &[f64],
    d: &[f64],
    mut alpha: f64,
    ls: LineSearch,
) -> Option<(Step, f64)> {
    let n = x.len();
    let mut gn = vec![0.0; n];
    let noise = 1e-13 * f.abs().max(1.0);
    while alpha > 1e-20 {
        let mut xn: Vec<f64> = x.iter().zip(d).map(|(a, b)| a + alpha * b).collect();
        p.project(&mut xn);
        let s: Vec<f64> = xn.iter().zip(x).map(|(a, b)| a - b).collect();
        let decrease = dot(g, &s);
        if decrease < 0.0 {
            let fnew = p.eval(&xn, &mut gn);
            let armijo = fnew <= f + ls.armijo * decrease;
            let flat = fnew <= f + noise && dot(&gn, &s) <= -0.8 * decrease;
            if armijo || flat {
                return Some((
                    Step {
                        x: xn,
                        g: gn,
                        f: fnew,
                    },
                    alpha,
                ));
            }
        }
        alpha *= ls.shrink;
    }
    None
}

pub(crate) fn gradient_descent<P: Smooth>(
    p: &mut P,
    x: &mut Vec<f64>,
    tol: f64,
    max_iter: usize,
    ls: LineSearch,
) -> InnerOutcome {
    let mut g = vec![0.0; x.len()];
    let mut f = p.eval(x, &mut g);
    let mut alpha = 1.0;
    let mut stat = p.stationarity(x, &g);
    for it in 0..max_iter {
        if stat <= tol {
            return InnerOutcome {
                iterations: it,
                converged: true,
                stationarity: stat,
            };
        }
        let mut d: Vec<f64> = g.iter().map(|v| -v).collect();
        p.tangent(x, &mut d);
        match backtrack(p, x, f, &g, &d, alpha * 2.0, ls) {
            Some((step, a)) => {
                alpha = a;
                *x = step.x;
                g = step.g;
                f = step.f;
                stat = p.stationarity(x, &g);
            }
            None => {
                return InnerOutcome {
                    iterations: it,
                    converged: false,
                    stationarity: stat,
                }
            }
        }
    }
    InnerOutcome {
        iterations: max_iter,
        converged: stat <= tol,
        stationarity: stat,
    }
}

pub(crate) fn lbfgs<P: Smooth>(
    p: &mut P,
    x: &mut Vec<f64>,
    tol: f64,
    max_iter: usize,
    memory: usize,
    ls: LineSearch,
) -> InnerOutcome {
    let n = x.len();
    let mut g = vec![0.0; n];
    let mut f = p.eval(x, &mut g);
    let mut stat = p.stationarity(x, &g);
    let mut hist: VecDeque<(Vec<f64>, Vec<f64>, f64)> = VecDeque::with_capacity(memory);
    for it in 0..max_iter {
        if stat <= tol {
            return InnerOutcome {
                iterations: it,
                converged: true,
                stationarity: stat,
            };
        }
        let pg = projected_gradient(p, x, &g);
        let mut q = pg.clone();
        let mut alphas = Vec::with_capacity(hist.len());
        for (s, y, rho) in hist.iter().rev() {
            let a = rho * dot(s, &q);
            axpy(-a, y, &mut q);
            alphas.push(a);
        }
        let gamma = match hist.back() {
            Some((s, y, _)) => dot(s, y) / dot(y, y),
            None => {
                let gmax = pg.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                if gmax > 0.0 {
                    1e-2 / gmax
                } else {
                    1.0
                }
            }
        };
        q.iter_mut().for_each(|v| *v *= gamma);
        for ((s, y, rho), a) in hist.iter().zip(alphas.iter().rev()) {
            let b = rho * dot(y, &q);
            axpy(a - b, s, &mut q);
        }
        let mut d: Vec<f64> = q.iter().map(|v| -v).collect();
        p.tangent(x, &mut d);
        if dot(&d, &g) >= 0.0 {
            hist.clear();
            d = pg.iter().map(|v| -v * gamma.abs().min(1.0)).collect();
        }
        match backtrack(p, x, f, &g, &d, 1.0, ls) {
            Some((step, _)) => {
                let s: Vec<f64> = step.x.iter().zip(x.iter()).map(|(a, b)| a - b).collect();
                let y: Vec<f64> = step.g.iter().zip(&g).map(|(a, b)| a - b).collect();
                let sy = dot(&s, &y);
                if sy > 1e-12 * dot(&s, &s).sqrt() * dot(&y, &y).sqrt() {
                    if hist.len() == memory {
                        hist.pop_front();
                    }
                    hist.push_back((s, y, 1.0 / sy));
                }
                *x = step.x;
                g = step.g;
                f = step.f;
                stat = p.stationarity(x, &g);
            }
            None => {
                if hist.is_empty() {
                    return InnerOutcome {
                        iterations: it,
                        converged: false,
                        stationarity: stat,
                    };
                }
                hist.clear();
            }
        }
    }
    InnerOutcome {
        iterations: max_iter,
        converged: stat <= tol,
        stationarity: stat,
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(a: f64, x: &[f64], y: &mut [f64]) {
    y.iter_mut().zip(x).for_each(|(yi, xi)| *yi += a * xi);
}
