//! Newton solves of the finite-dimensional stationarity systems for an arc
//! cutting a 60 degree corner and an arc standing on a straight chord.

use nalgebra::{DMatrix, DVector};

use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorExtremum {
    /// Distances from the corner to the two arc endpoints.
    pub a: f64,
    pub b: f64,
    pub r: f64,
    pub lambda: f64,
    pub length: f64,
    /// Max-norm of the system at the returned point.
    pub residual: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentExtremum {
    pub r: f64,
    /// Half the chord length.
    pub d: f64,
    pub lambda: f64,
    pub length: f64,
    pub residual: f64,
    pub iterations: usize,
}

const MAX_ITER: usize = 100;
const STOP: f64 = 1e-13;

/// Damped Newton with a central-difference Jacobian. `admissible` rejects
/// points outside the domain of `f`.
fn newton(
    mut x: DVector<f64>,
    f: impl Fn(&DVector<f64>) -> DVector<f64>,
    admissible: impl Fn(&DVector<f64>) -> bool,
) -> Result<(DVector<f64>, f64, usize)> {
    let n = x.len();
    let mut trace = Vec::new();
    let mut fx = f(&x);
    for it in 0..MAX_ITER {
        let norm = fx.amax();
        trace.push(norm);
        if !norm.is_finite() {
            break;
        }
        if norm < STOP {
            return Ok((x, norm, it));
        }
        let mut jac = DMatrix::<f64>::zeros(n, n);
        for j in 0..n {
            let h = 1e-6 * x[j].abs().max(1e-3);
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[j] += h;
            xm[j] -= h;
            jac.set_column(j, &((f(&xp) - f(&xm)) / (2.0 * h)));
        }
        let step = match jac.lu().solve(&(-&fx)) {
            Some(s) => s,
            None => break,
        };
        let mut t = 1.0;
        let mut accepted = false;
        while t > 1e-12 {
            let cand = &x + &step * t;
            if admissible(&cand) {
                let fc = f(&cand);
                if fc.amax() < norm || norm < 1e-10 {
                    x = cand;
                    fx = fc;
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    Err(Error::Divergence {
        iterations: trace.len(),
        trace,
    })
}

fn sector_system(v: &DVector<f64>, area: f64) -> DVector<f64> {
    let (a, b, r, lambda) = (v[0], v[1], v[2], v[3]);
    let s3 = 3f64.sqrt() / 4.0;
    let c = (a * a + b * b - a * b).sqrt();
    let u = (4.0 * r * r - c * c).sqrt();
    let theta = (c / (2.0 * r)).asin();
    let f_r = 2.0 * theta - 2.0 * c / u;
    let f_c = 2.0 * r / u;
    let g_r = r * f_r;
    let g_c = c * c / (2.0 * u);
    let c_a = (2.0 * a - b) / (2.0 * c);
    let c_b = (2.0 * b - a) / (2.0 * c);
    let g_a = g_c * c_a + s3 * b;
    let g_b = g_c * c_b + s3 * a;
    let g = r * r * theta - 0.25 * c * u - area + s3 * a * b;
    DVector::from_vec(vec![
        f_r + lambda * g_r,
        f_c * c_a + lambda * g_a,
        f_c * c_b + lambda * g_b,
        g,
    ])
}

/// Shortest arc enclosing `area` together with the two sides of a 60 degree
/// corner: returns `a = b = r = sqrt(6 area / pi)`.
pub fn sector_extremum_solve(area: f64) -> Result<SectorExtremum> {
    if !(area > 0.0 && area.is_finite()) {
        return domain(format!("area must be positive, got {area}"));
    }
    let s = area.sqrt();
    let start = DVector::from_vec(vec![s, s, s, -1.0 / s]);
    let admissible = |v: &DVector<f64>| {
        let c2 = v[0] * v[0] + v[1] * v[1] - v[0] * v[1];
        v[0] > 0.0 && v[1] > 0.0 && v[2] > 0.0 && c2 > 0.0 && 4.0 * v[2] * v[2] > c2
    };
    let (v, residual, iterations) = newton(start, |v| sector_system(v, area), admissible)?;
    let c = (v[0] * v[0] + v[1] * v[1] - v[0] * v[1]).sqrt();
    let length = 2.0 * v[2] * (c / (2.0 * v[2])).asin();
    Ok(SectorExtremum {
        a: v[0],
        b: v[1],
        r: v[2],
        lambda: v[3],
        length,
        residual,
        iterations,
    })
}

/// Solved in `(r, alpha, lambda)` with `d = r sin(alpha)`, where the Jacobian
/// stays regular at the minimizer.
fn segment_system(v: &DVector<f64>, area: f64) -> DVector<f64> {
    let (r, al, lambda) = (v[0], v[1], v[2]);
    let (s, c) = al.sin_cos();
    DVector::from_vec(vec![
        2.0 * al + lambda * r * (2.0 * al - (2.0 * al).sin()),
        1.0 + lambda * r * s * s,
        r * r * (al - s * c) - area,
    ])
}

/// Shortest arc enclosing `area` with a straight line: returns `r = d = sqrt(2 area / pi)`.
pub fn segment_extremum_solve(area: f64) -> Result<SegmentExtremum> {
    if !(area > 0.0 && area.is_finite()) {
        return domain(format!("area must be positive, got {area}"));
    }
    let s = area.sqrt();
    let start = DVector::from_vec(vec![s, 1.2, -1.0 / s]);
    let admissible = |v: &DVector<f64>| v[0] > 0.0 && v[1] > 0.0 && v[1] < std::f64::consts::PI;
    let (v, residual, iterations) = newton(start, |v| segment_system(v, area), admissible)?;
    Ok(SegmentExtremum {
        r: v[0],
        d: v[0] * v[1].sin(),
        lambda: v[2],
        length: 2.0 * v[0] * v[1],
        residual,
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn unit_sector() {
        let s = sector_extremum_solve(PI / 6.0).unwrap();
        assert!((s.r - 1.0).abs() < 1e-10);
        assert!((s.a - 1.0).abs() < 1e-10 && (s.b - 1.0).abs() < 1e-10);
        assert!((1.0 + s.lambda * s.r).abs() < 1e-10);
        assert!(s.residual < 1e-10);
    }

    #[test]
    fn unit_segment() {
        let s = segment_extremum_solve(PI / 2.0).unwrap();
        assert!((s.r - 1.0).abs() < 1e-10 && (s.d - 1.0).abs() < 1e-10);
        assert!((s.length - PI).abs() < 1e-10);
    }

    #[test]
    fn rejects_bad_area() {
        assert!(sector_extremum_solve(0.0).is_err());
        assert!(segment_extremum_solve(-1.0).is_err());
        assert!(segment_extremum_solve(f64::NAN).is_err());
    }
}
