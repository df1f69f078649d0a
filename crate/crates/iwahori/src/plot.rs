//! SVG pictures of the apartment for semisimple rank at most 2.
//!
//! Points of the apartment are handled through their values on the simple
//! roots. The base alcove is `{-1 <= <alpha, v> <= 0 : alpha > 0}` and
//! `t^lambda w` sends `v` to `lambda + w v`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write;

use iwahori_core::lattice::dot;
use iwahori_core::{AffineElt, Error, Result, RootDatum};

pub const VIEW_SIZE: f64 = 512.0;
const MARGIN: f64 = 16.0;
const STRIP_HEIGHT: f64 = 48.0;

pub const BACKGROUND: &str = "#ffffff";
pub const ALCOVE_FILL: &str = "#f2f2f2";
pub const ALCOVE_STROKE: &str = "#9e9e9e";
pub const WALL_STROKE: &str = "#303030";
pub const BASE_FILL: &str = "#4c78a8";
pub const BASE_STROKE: &str = "#1b3b66";
pub const HIGHLIGHT_FILL: &str = "#e45756";
pub const SHRUNKEN_FILL: &str = "#f2cf5b";

#[derive(Clone, Debug, Default)]
pub struct PlotSpec {
    /// Alcoves `w a` with `l(w) <= radius` are drawn.
    pub radius: usize,
    pub highlights: Vec<AffineElt>,
    pub shade_shrunken: bool,
}

#[derive(Clone, Debug)]
pub struct Alcove {
    /// Element of `W_a` with `w a` this alcove.
    pub w: AffineElt,
    /// Vertices as values on the simple roots.
    pub vertices: Vec<Vec<f64>>,
}

#[derive(Clone, Debug)]
pub struct Tiling {
    pub rank: usize,
    pub alcoves: Vec<Alcove>,
}

fn solve2(a: [f64; 4], b: [f64; 2]) -> Option<[f64; 2]> {
    let det = a[0] * a[3] - a[1] * a[2];
    if det.abs() < 1e-12 {
        return None;
    }
    Some([(b[0] * a[3] - a[1] * b[1]) / det, (a[0] * b[1] - a[2] * b[0]) / det])
}

/// Vertices of the base alcove, as simple-root values.
fn base_vertices(rd: &RootDatum) -> Vec<Vec<f64>> {
    let r = rd.rank();
    let rows: Vec<Vec<f64>> = (0..rd.n_pos()).map(|k| rd.root_coeffs(k).iter().map(|&c| c as f64).collect()).collect();
    let feasible = |a: &[f64]| {
        rows.iter().all(|row| {
            let v: f64 = row.iter().zip(a).map(|(x, y)| x * y).sum();
            (-1.0 - 1e-9..=1e-9).contains(&v)
        })
    };
    let mut out: Vec<Vec<f64>> = Vec::new();
    let mut push = |p: Vec<f64>| {
        if feasible(&p) && !out.iter().any(|q| q.iter().zip(&p).all(|(a, b)| (a - b).abs() < 1e-9)) {
            out.push(p);
        }
    };
    match r {
        1 => {
            for row in &rows {
                for b in [0.0, -1.0] {
                    push(vec![b / row[0]]);
                }
            }
        }
        2 => {
            for (i, ri) in rows.iter().enumerate() {
                for rj in &rows[i + 1..] {
                    for bi in [0.0, -1.0] {
                        for bj in [0.0, -1.0] {
                            if let Some(p) = solve2([ri[0], ri[1], rj[0], rj[1]], [bi, bj]) {
                                push(p.to_vec());
                            }
                        }
                    }
                }
            }
        }
        _ => {}
    }
    out
}

/// `x` applied to a point given by simple-root values.
fn act(rd: &RootDatum, x: &AffineElt, a: &[f64]) -> Vec<f64> {
    let w = rd.weyl();
    let vi = w.inv(x.v);
    (0..rd.rank())
        .map(|i| {
            let k = w.root_image(vi, i);
            let (idx, sign) = if k < rd.n_pos() { (k, 1.0) } else { (rd.neg_root(k), -1.0) };
            let val: f64 = rd.root_coeffs(idx).iter().zip(a).map(|(c, y)| *c as f64 * y).sum();
            dot(rd.simple_root(i), &x.lambda) as f64 + sign * val
        })
        .collect()
}

fn key(p: &[f64]) -> Vec<i64> {
    p.iter().map(|x| (x * 1e6).round() as i64).collect()
}

pub fn tiling(rd: &RootDatum, radius: usize) -> Result<Tiling> {
    let r = rd.rank();
    if r > 2 {
        return Err(Error::RankTooLarge(r));
    }
    if r == 0 {
        return Err(Error::InvalidArgument("semisimple rank 0 has no walls to draw".into()));
    }
    let base = base_vertices(rd);
    let alcoves = rd
        .affine_weyl_ball(radius, 1_000_000)?
        .into_iter()
        .map(|w| {
            let vertices = base.iter().map(|p| act(rd, &w, p)).collect();
            Alcove { w, vertices }
        })
        .collect();
    Ok(Tiling { rank: r, alcoves })
}

impl Tiling {
    /// Index of the alcove with the same vertex set as `x a`.
    pub fn find(&self, rd: &RootDatum, x: &AffineElt) -> Option<usize> {
        let base = base_vertices(rd);
        let mut want: Vec<Vec<i64>> = base.iter().map(|p| key(&act(rd, x, p))).collect();
        want.sort();
        self.alcoves.iter().position(|a| {
            let mut have: Vec<Vec<i64>> = a.vertices.iter().map(|p| key(p)).collect();
            have.sort();
            have == want
        })
    }

    /// Breadth-first distances from the base alcove, moving between alcoves
    /// that share a facet.
    pub fn gallery_distances(&self) -> Vec<Option<usize>> {
        let mut by_facet: BTreeMap<Vec<Vec<i64>>, Vec<usize>> = BTreeMap::new();
        for (i, a) in self.alcoves.iter().enumerate() {
            let keys: Vec<Vec<i64>> = a.vertices.iter().map(|p| key(p)).collect();
            for skip in 0..keys.len() {
                let mut facet: Vec<Vec<i64>> =
                    keys.iter().enumerate().filter(|(j, _)| *j != skip).map(|(_, k)| k.clone()).collect();
                if facet.len() != self.rank {
                    continue;
                }
                facet.sort();
                by_facet.entry(facet).or_default().push(i);
            }
        }
        let mut adj = vec![Vec::new(); self.alcoves.len()];
        for ids in by_facet.values() {
            for &a in ids {
                for &b in ids {
                    if a != b {
                        adj[a].push(b);
                    }
                }
            }
        }
        let start = self.alcoves.iter().position(|a| a.w.lambda.iter().all(|&c| c == 0) && a.w.v.is_id());
        let mut dist = vec![None; self.alcoves.len()];
        let Some(s) = start else { return dist };
        dist[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(a) = queue.pop_front() {
            for &b in &adj[a] {
                if dist[b].is_none() {
                    dist[b] = Some(dist[a].unwrap() + 1);
                    queue.push_back(b);
                }
            }
        }
        dist
    }
}

/// Orthonormal picture coordinates from simple-root values.
struct Embedding {
    /// Ambient coordinates of the point with simple-root values `e_j`.
    cols: Vec<Vec<f64>>,
    basis: Vec<Vec<f64>>,
}

impl Embedding {
    fn new(rd: &RootDatum) -> Self {
        let r = rd.rank();
        let d = rd.ambient_rank();
        // inverse Cartan: simple-root values -> coroot coefficients
        let c: Vec<Vec<f64>> = rd.cartan().iter().map(|row| row.iter().map(|&x| x as f64).collect()).collect();
        let inv: Vec<Vec<f64>> = if r == 1 {
            vec![vec![1.0 / c[0][0]]]
        } else {
            let det = c[0][0] * c[1][1] - c[0][1] * c[1][0];
            vec![vec![c[1][1] / det, -c[0][1] / det], vec![-c[1][0] / det, c[0][0] / det]]
        };
        let cols: Vec<Vec<f64>> = (0..r)
            .map(|j| {
                let mut v = vec![0.0; d];
                for (m, row) in inv.iter().enumerate() {
                    for (vi, &cv) in v.iter_mut().zip(rd.simple_coroot(m)) {
                        *vi += row[j] * cv as f64;
                    }
                }
                v
            })
            .collect();
        let mut basis: Vec<Vec<f64>> = Vec::new();
        for i in 0..r {
            let mut v: Vec<f64> = rd.simple_coroot(i).iter().map(|&x| x as f64).collect();
            for b in &basis {
                let p: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= p * bi;
                }
            }
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            basis.push(v.into_iter().map(|x| x / n).collect());
        }
        Embedding { cols, basis }
    }

    fn plane(&self, a: &[f64]) -> (f64, f64) {
        let d = self.cols[0].len();
        let mut amb = vec![0.0; d];
        for (aj, col) in a.iter().zip(&self.cols) {
            for (x, c) in amb.iter_mut().zip(col) {
                *x += aj * c;
            }
        }
        let coord = |b: &Vec<f64>| amb.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
        (coord(&self.basis[0]), self.basis.get(1).map(coord).unwrap_or(0.0))
    }
}

fn polygon_points(pts: &[(f64, f64)]) -> String {
    let cx = pts.iter().map(|p| p.0).sum::<f64>() / pts.len() as f64;
    let cy = pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64;
    let mut sorted = pts.to_vec();
    sorted.sort_by(|a, b| {
        let ta = (a.1 - cy).atan2(a.0 - cx);
        let tb = (b.1 - cy).atan2(b.0 - cx);
        ta.partial_cmp(&tb).unwrap()
    });
    sorted.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect::<Vec<_>>().join(" ")
}

pub fn plot_apartment(rd: &RootDatum, spec: &PlotSpec) -> Result<String> {
    let radius = spec.highlights.iter().map(|x| rd.length(x)).fold(spec.radius, usize::max);
    let tiles = tiling(rd, radius)?;
    let emb = Embedding::new(rd);
    let highlighted: Vec<usize> = spec.highlights.iter().filter_map(|x| tiles.find(rd, x)).collect();

    // picture coordinates; rank 1 alcoves become rectangles of a strip
    let raw: Vec<Vec<(f64, f64)>> = tiles
        .alcoves
        .iter()
        .map(|a| {
            let pts: Vec<(f64, f64)> = a.vertices.iter().map(|v| emb.plane(v)).collect();
            if tiles.rank == 1 {
                let (x0, x1) = (pts[0].0, pts[1].0);
                vec![(x0, 0.0), (x1, 0.0), (x1, 1.0), (x0, 1.0)]
            } else {
                pts
            }
        })
        .collect();
    let all = raw.iter().flatten();
    let (mut lo_x, mut hi_x, mut lo_y, mut hi_y) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in all {
        lo_x = lo_x.min(x);
        hi_x = hi_x.max(x);
        lo_y = lo_y.min(y);
        hi_y = hi_y.max(y);
    }
    let span = VIEW_SIZE - 2.0 * MARGIN;
    let (sx, sy, oy) = if tiles.rank == 1 {
        let s = span / (hi_x - lo_x);
        (s, STRIP_HEIGHT, (VIEW_SIZE - STRIP_HEIGHT) / 2.0)
    } else {
        let s = span / (hi_x - lo_x).max(hi_y - lo_y);
        (s, s, MARGIN + (span - s * (hi_y - lo_y)) / 2.0)
    };
    let ox = MARGIN + (span - sx * (hi_x - lo_x)) / 2.0;
    let to_px = |(x, y): (f64, f64)| (ox + sx * (x - lo_x), VIEW_SIZE - oy - sy * (y - lo_y));

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="512" height="512" viewBox="0 0 512 512">"#
    );
    let _ = writeln!(svg, r#"<rect x="0" y="0" width="512" height="512" fill="{BACKGROUND}"/>"#);
    for (i, (a, pts)) in tiles.alcoves.iter().zip(&raw).enumerate() {
        let is_base = a.w.lambda.iter().all(|&c| c == 0) && a.w.v.is_id();
        let is_hl = highlighted.contains(&i);
        let shrunken = spec.shade_shrunken && rd.shrunken_status(&a.w).is_shrunken();
        let fill = if is_hl {
            HIGHLIGHT_FILL
        } else if is_base {
            BASE_FILL
        } else if shrunken {
            SHRUNKEN_FILL
        } else {
            ALCOVE_FILL
        };
        let mut class = String::from("alcove");
        for (flag, name) in [(is_base, " base"), (is_hl, " highlight"), (shrunken, " shrunken")] {
            if flag {
                class.push_str(name);
            }
        }
        let (stroke, width) = if is_base { (BASE_STROKE, 2.5) } else { (ALCOVE_STROKE, 0.8) };
        let px: Vec<(f64, f64)> = pts.iter().map(|&p| to_px(p)).collect();
        let _ = writeln!(
            svg,
            r#"<polygon class="{class}" data-elt="{}" data-length="{}" points="{}" fill="{fill}" stroke="{stroke}" stroke-width="{width}"/>"#,
            rd.format_elt(&a.w),
            rd.length(&a.w),
            polygon_points(&px)
        );
    }
    // walls through the origin
    let origin = to_px(emb.plane(&vec![0.0; tiles.rank]));
    if tiles.rank == 1 {
        let _ = writeln!(
            svg,
            r#"<line class="wall" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="{WALL_STROKE}" stroke-width="1.5"/>"#,
            origin.0,
            oy - 8.0,
            origin.0,
            VIEW_SIZE - oy + 8.0
        );
    } else {
        for k in 0..rd.n_pos() {
            // direction of the line <alpha_k, v> = 0 in simple-root values
            let c = rd.root_coeffs(k);
            let dir = emb.plane(&[-(c[1] as f64), c[0] as f64]);
            let n = (dir.0 * dir.0 + dir.1 * dir.1).sqrt();
            let len = VIEW_SIZE * 2.0;
            let (dx, dy) = (dir.0 / n * len, -dir.1 / n * len);
            let _ = writeln!(
                svg,
                r#"<line class="wall" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="{WALL_STROKE}" stroke-width="1.2"/>"#,
                origin.0 - dx,
                origin.1 - dy,
                origin.0 + dx,
                origin.1 + dy
            );
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_alcove_shapes() {
        assert_eq!(base_vertices(&RootDatum::sl(2).unwrap()).len(), 2);
        assert_eq!(base_vertices(&RootDatum::sl(3).unwrap()).len(), 3);
        assert_eq!(base_vertices(&RootDatum::sp(4).unwrap()).len(), 3);
    }

    #[test]
    fn rank_three_is_rejected() {
        let rd = RootDatum::sl(4).unwrap();
        assert_eq!(plot_apartment(&rd, &PlotSpec::default()).unwrap_err(), Error::RankTooLarge(3));
    }

    #[test]
    fn omega_fixes_the_base_alcove() {
        let rd = RootDatum::sl(3).unwrap();
        let t = tiling(&rd, 1).unwrap();
        for tau in rd.omega_reps(1) {
            assert_eq!(t.find(&rd, &tau), t.find(&rd, &rd.identity()));
        }
    }
}
