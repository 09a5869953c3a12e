//! Packing equal-area regular hexagons into a regular polygon, and the cut
//! length estimate built from the packing.
//!
//! The hexagons sit on a flat-topped lattice centred on the polygon's
//! centroid. Cells are enumerated on the fly, so memory does not grow with `m`.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::geometry::{build_polygon, Point2, RegularPolygon};
use crate::parallel::ordered_map;

/// Clearance every embedded hexagon keeps from the polygon boundary.
pub const CLEARANCE: f64 = 1e-9;

/// Upper limit on lattice cells visited by one packing.
pub const MAX_CELLS: f64 = 4e9;

const AXIAL: [(i64, i64); 6] = [(1, 0), (1, -1), (0, -1), (-1, 0), (-1, 1), (0, 1)];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HexPackResult {
    pub n: usize,
    pub m: u64,
    pub hex_side: f64,
    /// Number of embedded hexagons.
    pub embedded_count: u64,
    /// `m - embedded_count`: regions carved from the leftover ring.
    pub t: u64,
    /// Bound on the ring connectors, `t` hexagon diameters.
    pub l_t: f64,
    /// Outer boundary length of the union of embedded hexagons.
    pub perimeter_b: f64,
    /// Perimeter of one hexagon.
    pub perimeter_b1: f64,
    pub total_length_estimate: f64,
    /// `total_length_estimate / sqrt(m)`.
    pub ratio: f64,
    /// Lattice shift applied, in units of the hexagon side.
    pub offset: Point2,
}

impl HexPackResult {
    pub fn hexagon_area(&self) -> f64 {
        1.5 * 3f64.sqrt() * self.hex_side * self.hex_side
    }

    /// Area of the polygon outside the embedded hexagons.
    pub fn ring_area(&self, polygon_area: f64) -> f64 {
        polygon_area - self.embedded_count as f64 * polygon_area / self.m as f64
    }

    pub fn l_t_per_m(&self) -> f64 {
        self.l_t / self.m as f64
    }
}

/// Side of a regular hexagon with area `T / m`.
pub fn hex_side(n: usize, m: u64) -> f64 {
    let cot = 1.0 / (PI / n as f64).tan();
    (n as f64 * cot / (6.0 * 3f64.sqrt() * m as f64)).sqrt()
}

struct Lattice {
    poly: RegularPolygon,
    h: f64,
    offset: Point2,
    normals: Vec<Point2>,
    /// Per side, `apothem - CLEARANCE - h * max_k n . u_k`: a centre `c` embeds iff
    /// `n . c <= limit` for all sides.
    limits: Vec<f64>,
    q_max: i64,
    r_max: i64,
}

impl Lattice {
    fn new(poly: RegularPolygon, h: f64, offset: Point2) -> Self {
        let normals: Vec<Point2> = (0..poly.n()).map(|i| poly.outward_normal(i)).collect();
        let corners: Vec<Point2> = (0..6)
            .map(|k| Point2::polar(1.0, PI / 3.0 * k as f64))
            .collect();
        let limits = normals
            .iter()
            .map(|nrm| {
                let reach = corners
                    .iter()
                    .map(|u| nrm.dot(*u))
                    .fold(f64::NEG_INFINITY, f64::max);
                poly.apothem() - CLEARANCE - h * reach
            })
            .collect();
        let reach = poly.circumradius() + 2.0 * h;
        let q_max = (reach / (1.5 * h)).ceil() as i64 + 1;
        let r_max = (reach / (3f64.sqrt() * h)).ceil() as i64 + q_max / 2 + 1;
        Lattice {
            poly,
            h,
            offset,
            normals,
            limits,
            q_max,
            r_max,
        }
    }

    fn centre(&self, q: i64, r: i64) -> Point2 {
        let h = self.h;
        Point2::new(
            1.5 * h * q as f64 + self.offset.x * h,
            3f64.sqrt() * h * (r as f64 + 0.5 * q as f64) + self.offset.y * h,
        )
    }

    fn embedded(&self, q: i64, r: i64) -> bool {
        let c = self.centre(q, r);
        self.normals
            .iter()
            .zip(&self.limits)
            .all(|(nrm, lim)| nrm.dot(c) <= *lim)
    }

    /// Visits every embedded cell.
    fn for_each(&self, mut f: impl FnMut(i64, i64)) {
        let ymax = self.poly.circumradius() + self.h;
        for q in -self.q_max..=self.q_max {
            // Rows whose centre could lie within the circumscribed disc.
            let base = 0.5 * q as f64 + self.offset.y;
            let lo = ((-ymax / (3f64.sqrt() * self.h)) - base).floor() as i64;
            let hi = ((ymax / (3f64.sqrt() * self.h)) - base).ceil() as i64;
            for r in lo.max(-self.r_max)..=hi.min(self.r_max) {
                if self.embedded(q, r) {
                    f(q, r);
                }
            }
        }
    }

    fn estimated_cells(&self) -> f64 {
        (2 * self.q_max + 1) as f64
            * (2.0 * (self.poly.circumradius() + self.h) / (3f64.sqrt() * self.h) + 3.0)
    }
}

/// Largest `m` whose lattice stays within [`MAX_CELLS`] for an `n`-gon.
pub fn cell_limit(n: usize) -> u64 {
    let poly = build_polygon(n).expect("n >= 3 checked by callers");
    let cot = 1.0 / (PI / n as f64).tan();
    let r = poly.circumradius();
    // cells ~ (2R / 1.5h)(2R / sqrt(3) h) = 16 R^2 m / (n cot(pi/n))
    (MAX_CELLS * n as f64 * cot / (16.0 * r * r)).floor() as u64
}

fn check(n: usize, m: u64) -> Result<RegularPolygon> {
    if m == 0 {
        return domain("m must be at least 1");
    }
    build_polygon(n)
}

fn pack(poly: &RegularPolygon, m: u64, offset: Point2) -> Result<HexPackResult> {
    let n = poly.n();
    let h = hex_side(n, m);
    let lattice = Lattice::new(poly.clone(), h, offset);
    if lattice.estimated_cells() > MAX_CELLS {
        return Err(Error::Resource {
            limit_m: cell_limit(n),
        });
    }
    let mut count: u64 = 0;
    let mut exposed: u64 = 0;
    lattice.for_each(|q, r| {
        count += 1;
        exposed += AXIAL
            .iter()
            .filter(|(dq, dr)| !lattice.embedded(q + dq, r + dr))
            .count() as u64;
    });
    if count > m {
        return Err(Error::Internal(format!(
            "{count} hexagons of area T/{m} embedded in the {n}-gon"
        )));
    }
    let t = m - count;
    let l_t = t as f64 * 2.0 * h;
    let perimeter_b = exposed as f64 * h;
    let perimeter_b1 = 6.0 * h;
    let total = l_t + 0.5 * count as f64 * perimeter_b1 + 0.5 * perimeter_b;
    Ok(HexPackResult {
        n,
        m,
        hex_side: h,
        embedded_count: count,
        t,
        l_t,
        perimeter_b,
        perimeter_b1,
        total_length_estimate: total,
        ratio: total / (m as f64).sqrt(),
        offset,
    })
}

/// Packs hexagons of area `T / m` into the `n`-gon on a lattice centred at the
/// centroid.
pub fn pack_hexagons(n: usize, m: u64) -> Result<HexPackResult> {
    let poly = check(n, m)?;
    pack(&poly, m, Point2::ORIGIN)
}

/// Like [`pack_hexagons`], also trying a 5 x 5 grid of lattice shifts and
/// keeping the one embedding the most hexagons (the first such shift on ties).
pub fn pack_hexagons_best_offset(n: usize, m: u64) -> Result<HexPackResult> {
    let poly = check(n, m)?;
    let mut best = pack(&poly, m, Point2::ORIGIN)?;
    for i in 0..5 {
        for j in 0..5 {
            let shift = Point2::new(1.5 * i as f64 / 5.0, 3f64.sqrt() * j as f64 / 5.0);
            let cand = pack(&poly, m, shift)?;
            if cand.embedded_count > best.embedded_count {
                best = cand;
            }
        }
    }
    Ok(best)
}

/// Centres of the embedded hexagons, for inspection.
pub fn embedded_centers(n: usize, m: u64) -> Result<Vec<Point2>> {
    let poly = check(n, m)?;
    let lattice = Lattice::new(poly, hex_side(n, m), Point2::ORIGIN);
    if lattice.estimated_cells() > MAX_CELLS {
        return Err(Error::Resource {
            limit_m: cell_limit(n),
        });
    }
    let mut out = Vec::new();
    lattice.for_each(|q, r| out.push(lattice.centre(q, r)));
    Ok(out)
}

fn check_series(m_list: &[u64]) -> Result<()> {
    if m_list.is_empty() {
        return domain("m list is empty");
    }
    if m_list.windows(2).any(|w| w[0] >= w[1]) {
        return domain("m list must be strictly ascending");
    }
    Ok(())
}

/// One packing per `m`, in order.
pub fn ratio_series(n: usize, m_list: &[u64]) -> Result<Vec<HexPackResult>> {
    check_series(m_list)?;
    m_list.iter().map(|&m| pack_hexagons(n, m)).collect()
}

/// [`ratio_series`] evaluated on up to `threads` workers; output order matches input.
pub fn ratio_series_parallel(
    n: usize,
    m_list: &[u64],
    threads: usize,
) -> Result<Vec<HexPackResult>> {
    check_series(m_list)?;
    ordered_map(m_list, threads, |&m| pack_hexagons(n, m))
        .into_iter()
        .collect()
}
