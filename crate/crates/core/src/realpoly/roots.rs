//! Complex roots of real polynomials.
//!
//! Aberth-Ehrlich simultaneous iteration on the monic polynomial, started on a
//! perturbed circle whose radius is the Cauchy bound. Multiple roots come out
//! of the iteration as small clusters, which are found by divisive clustering
//! of the approximations. A group of `m` is accepted as one `m`-fold root when
//! its centre, refined as a simple root of the `(m-1)`-th derivative, kills
//! the first `m` Taylor coefficients up to the coefficient uncertainty, every
//! member lies within a few pseudozero radii of it, and no other
//! approximation lies that close.

use num_complex::Complex64;

use super::RealPoly;
use crate::error::{Error, Result};
use crate::tol;

const MAX_ITER: usize = 1000;
/// Relative coefficient uncertainty, in ulps of the magnitude sum.
const BACKWARD_ULPS: f64 = 4.0;
/// Slack on the vanishing of the low Taylor coefficients at a cluster centre.
const TAYLOR_SLACK: f64 = 64.0;
/// Slack for the second pass over roots that failed to validate, which
/// absorbs rounding accumulated while the coefficients were formed.
const RETRY_SLACK: f64 = 4096.0;
/// Members may sit this many pseudozero radii from the centre.
const PSEUDOZERO_REACH: f64 = 4.0;
const REAL_AXIS_TOL: f64 = 1e-9;
const LOW_ZERO_REL: f64 = 1e-14;
const PERTURB_SEED: u64 = 0x9e37_79b9_7f4a_7c15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealRoot {
    pub value: f64,
    pub mult: usize,
    /// First-order error of `value` under the coefficient uncertainty.
    pub error: f64,
}

/// The conjugate pair `alpha +- i beta`, `beta > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPair {
    pub alpha: f64,
    pub beta: f64,
    pub mult: usize,
    /// First-order error of `alpha + i beta` under the coefficient uncertainty.
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RootSet {
    pub real: Vec<RealRoot>,
    pub complex: Vec<ComplexPair>,
}

impl RootSet {
    /// Sum of multiplicities, complex pairs counted twice.
    pub fn count(&self) -> usize {
        self.real.iter().map(|r| r.mult).sum::<usize>()
            + 2 * self.complex.iter().map(|c| c.mult).sum::<usize>()
    }

    /// The monic polynomial with exactly these roots.
    pub fn monic_poly(&self) -> RealPoly {
        let mut p = RealPoly::one();
        for r in &self.real {
            p = &p * &RealPoly::new(vec![-r.value, 1.0]).pow(r.mult as u32);
        }
        for c in &self.complex {
            p = &p * &RealPoly::sphere_factor(c.alpha, c.beta).pow(c.mult as u32);
        }
        p
    }
}

pub(super) fn find_roots(p: &RealPoly) -> Result<RootSet> {
    if p.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let norm = p.norm_inf();
    let c = p.coeffs();
    let zeros_at_origin = c
        .iter()
        .take_while(|a| a.abs() <= LOW_ZERO_REL * norm)
        .count();
    let lead = p.lead();
    let monic: Vec<f64> = c[zeros_at_origin..].iter().map(|a| a / lead).collect();

    let mut out = RootSet::default();
    if zeros_at_origin > 0 {
        out.real.push(RealRoot {
            value: 0.0,
            mult: zeros_at_origin,
            error: 0.0,
        });
    }
    let n = monic.len() - 1;
    if n == 0 {
        return Ok(out);
    }

    let approx = if n == 1 {
        vec![Complex64::new(-monic[0], 0.0)]
    } else {
        aberth(&monic)?
    };
    let mut upper = 0usize;
    let mut lower = 0usize;
    for Cluster { centre: z, mult: m, radius, spread } in cluster(&monic, &approx) {
        // a conjugation-invariant group straddles the real axis
        if z.im.abs() <= spread.max(REAL_AXIS_TOL * (1.0 + z.norm())) {
            let x = polish(&monic, Complex64::new(z.re, 0.0), m, radius);
            out.real.push(RealRoot {
                value: x.re,
                mult: m,
                error: centre_error(&monic, x, m),
            });
        } else if z.im > 0.0 {
            upper += m;
            out.complex.push(ComplexPair {
                alpha: z.re,
                beta: z.im,
                mult: m,
                error: centre_error(&monic, z, m),
            });
        } else {
            lower += m;
        }
    }
    if upper != lower {
        return Err(Error::RootFindingFailed(format!(
            "unpaired complex roots ({upper} above the real axis, {lower} below)"
        )));
    }
    merge_real(&mut out.real);
    out.real.sort_by(|a, b| a.value.total_cmp(&b.value));
    out.complex
        .sort_by(|a, b| a.alpha.total_cmp(&b.alpha).then(a.beta.total_cmp(&b.beta)));

    if out.count() != n + zeros_at_origin {
        return Err(Error::RootFindingFailed(format!(
            "multiplicities sum to {} for degree {}",
            out.count(),
            n + zeros_at_origin
        )));
    }
    let eps = tol::current().root;
    let residual_ok = |z: Complex64| {
        let v = horner(&monic, z).norm();
        v <= eps * abs_scale(&monic, 0, z.norm()).max(f64::MIN_POSITIVE)
    };
    for r in &out.real {
        if (r.value != 0.0 || zeros_at_origin == 0) && !residual_ok(Complex64::new(r.value, 0.0)) {
            return Err(Error::RootFindingFailed(format!(
                "residual too large at real root {}",
                r.value
            )));
        }
    }
    for c in &out.complex {
        if !residual_ok(Complex64::new(c.alpha, c.beta)) {
            return Err(Error::RootFindingFailed(format!(
                "residual too large at {} + {}i",
                c.alpha, c.beta
            )));
        }
    }
    Ok(out)
}

/// Two real clusters may land on the same point (a root at the origin found
/// both by stripping and by iteration only if stripping missed it).
fn merge_real(real: &mut Vec<RealRoot>) {
    let mut merged: Vec<RealRoot> = Vec::with_capacity(real.len());
    for r in real.drain(..) {
        match merged
            .iter_mut()
            .find(|m| (m.value - r.value).abs() <= 1e-12 * (1.0 + r.value.abs()))
        {
            Some(m) => m.mult += r.mult,
            None => merged.push(r),
        }
    }
    *real = merged;
}

fn horner(c: &[f64], z: Complex64) -> Complex64 {
    c.iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

/// Value and first derivative.
fn horner2(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

fn derivative(c: &[f64], k: usize) -> Vec<f64> {
    let mut d = c.to_vec();
    for _ in 0..k {
        d = d
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, a)| a * n as f64)
            .collect();
    }
    d
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `sum |c_i| C(i,k) r^(i-k)`: magnitude of the terms making up the `k`-th
/// Taylor coefficient at radius `r`.
fn abs_scale(c: &[f64], k: usize, r: f64) -> f64 {
    c.iter()
        .enumerate()
        .skip(k)
        .map(|(i, a)| a.abs() * binom(i, k) * r.powi((i - k) as i32))
        .sum()
}

/// `k`-th Taylor coefficient `p^(k)(z) / k!`.
fn taylor(c: &[f64], k: usize, z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, &a) in c.iter().enumerate().skip(k).rev() {
        acc = acc * z + a * binom(i, k);
    }
    acc
}

fn cauchy_bound(monic: &[f64]) -> f64 {
    let n = monic.len() - 1;
    1.0 + monic[..n].iter().fold(0.0f64, |m, a| m.max(a.abs()))
}

struct Lcg(u64);

impl Lcg {
    fn next_unit(&mut self) -> f64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }
}

fn aberth(monic: &[f64]) -> Result<Vec<Complex64>> {
    let n = monic.len() - 1;
    let radius = cauchy_bound(monic);
    let mut rng = Lcg(PERTURB_SEED);
    let tau = std::f64::consts::TAU;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = tau * (k as f64 + 0.25 + 0.5 * rng.next_unit()) / n as f64 + 0.4;
            let r = radius * (1.0 + 0.05 * (rng.next_unit() - 0.5));
            Complex64::from_polar(r, theta)
        })
        .collect();

    let mut done = vec![false; n];
    for _ in 0..MAX_ITER {
        let mut all_done = true;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (p, dp) = horner2(monic, z[k]);
            if p == Complex64::new(0.0, 0.0) {
                done[k] = true;
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| {
                    let d = z[k] - z[j];
                    if d == Complex64::new(0.0, 0.0) {
                        Complex64::new(1e300, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if !w.is_finite() {
                continue;
            }
            z[k] -= w;
            if w.norm() <= 4.0 * f64::EPSILON * (1.0 + z[k].norm()) {
                done[k] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            break;
        }
    }
    if z.iter().any(|v| !v.is_finite()) {
        return Err(Error::RootFindingFailed(
            "Aberth iteration produced a non-finite value".into(),
        ));
    }
    Ok(z)
}

/// Newton's method on `c`; returns `None` if the iterate leaves the disc of
/// radius `max_move` around the start.
fn newton(c: &[f64], start: Complex64, max_move: f64) -> Option<Complex64> {
    let mut z = start;
    let mut best = (horner(c, z).norm(), z);
    for _ in 0..60 {
        let (p, dp) = horner2(c, z);
        if p == Complex64::new(0.0, 0.0) {
            return Some(z);
        }
        let step = p / dp;
        if !step.is_finite() {
            break;
        }
        z -= step;
        if (z - start).norm() > max_move {
            return None;
        }
        let v = horner(c, z).norm();
        if v < best.0 {
            best = (v, z);
        }
        if step.norm() <= f64::EPSILON * (1.0 + z.norm()) {
            break;
        }
    }
    Some(best.1)
}

/// Uncertainty of the `k`-th Taylor coefficient at a point of modulus `r`.
fn uncertainty(monic: &[f64], k: usize, r: f64) -> f64 {
    BACKWARD_ULPS * f64::EPSILON * abs_scale(monic, k, r)
}

/// An `m`-fold root is a simple root of the `(m-1)`-th derivative, which
/// fixes its position to within `u_(m-1) / |t_m|`.
fn centre_error(monic: &[f64], z: Complex64, m: usize) -> f64 {
    uncertainty(monic, m - 1, z.norm()) / taylor(monic, m, z).norm()
}

/// Refined centre and pseudozero radius if the group is one `m`-fold root.
fn validate(monic: &[f64], members: &[Complex64], slack: f64) -> Option<(Complex64, f64)> {
    let m = members.len();
    let centroid = members.iter().sum::<Complex64>() / m as f64;
    let spread = members
        .iter()
        .map(|z| (z - centroid).norm())
        .fold(0.0, f64::max);
    let d = derivative(monic, m - 1);
    // the centroid of an ill-conditioned cluster can sit several spreads off
    let reach = (4.0 * spread).max(1e-6 * (1.0 + centroid.norm()));
    let centre = newton(&d, centroid, reach)?;
    let r = centre.norm();
    let u: Vec<f64> = (0..m).map(|k| slack * uncertainty(monic, k, r)).collect();
    let t: Vec<f64> = (0..=m).map(|k| taylor(monic, k, centre).norm()).collect();
    // some polynomial within the uncertainty has an m-fold root at the centre
    if (0..m).any(|k| t[k] > u[k]) {
        return None;
    }
    // and the roots of its perturbations stay within the pseudozero radius
    let pseudo = (0..m)
        .map(|k| (u[k] / t[m]).powf(1.0 / (m - k) as f64))
        .fold(0.0, f64::max);
    let radius = PSEUDOZERO_REACH * pseudo;
    members
        .iter()
        .all(|z| (z - centre).norm() <= radius)
        .then_some((centre, radius))
}

struct Cluster {
    centre: Complex64,
    mult: usize,
    /// Distance within which Newton may move the centre.
    radius: f64,
    /// Largest distance from the members' centroid to a member.
    spread: f64,
}

/// Divisive single-linkage clustering: accept a group when it validates and
/// its centre is nearer to every member than to any other approximation,
/// otherwise cut the longest edge of its minimum spanning tree. Simple roots
/// left unvalidated get a second pass with a looser backward error.
fn cluster(monic: &[f64], approx: &[Complex64]) -> Vec<Cluster> {
    let (mut out, failed) = cluster_pass(monic, approx, (0..approx.len()).collect(), TAYLOR_SLACK);
    let failed = if failed.len() > 1 {
        let (retried, still) = cluster_pass(monic, approx, failed, RETRY_SLACK);
        out.extend(retried);
        still
    } else {
        failed
    };
    // unpolishable simple roots; the residual check decides
    out.extend(failed.into_iter().map(|i| Cluster {
        centre: approx[i],
        mult: 1,
        radius: 0.0,
        spread: 0.0,
    }));
    out
}

/// Validated clusters among `indices`, and the singletons that failed.
fn cluster_pass(
    monic: &[f64],
    approx: &[Complex64],
    indices: Vec<usize>,
    slack: f64,
) -> (Vec<Cluster>, Vec<usize>) {
    let mut out = Vec::new();
    let mut failed = Vec::new();
    let mut stack = vec![indices];
    while let Some(group) = stack.pop() {
        let members: Vec<Complex64> = group.iter().map(|&i| approx[i]).collect();
        let isolated = |c: Complex64, radius: f64| {
            (0..approx.len())
                .filter(|i| !group.contains(i))
                .all(|i| (approx[i] - c).norm() > radius)
        };
        match validate(monic, &members, slack) {
            Some((centre, radius)) if isolated(centre, radius) => {
                let centroid = members.iter().sum::<Complex64>() / members.len() as f64;
                let spread = members.iter().map(|z| (z - centroid).norm()).fold(0.0, f64::max);
                out.push(Cluster { centre, mult: group.len(), radius, spread });
                continue;
            }
            _ if group.len() == 1 => {
                failed.push(group[0]);
                continue;
            }
            _ => {}
        }
        let (a, b) = split_longest_edge(&members);
        stack.push(a.into_iter().map(|k| group[k]).collect());
        stack.push(b.into_iter().map(|k| group[k]).collect());
    }
    (out, failed)
}

/// Index sets of the two sides of the cut.
fn split_longest_edge(group: &[Complex64]) -> (Vec<usize>, Vec<usize>) {
    let n = group.len();
    // Prim's algorithm, O(n^2)
    let mut in_tree = vec![false; n];
    let mut best = vec![f64::INFINITY; n];
    let mut parent = vec![usize::MAX; n];
    best[0] = 0.0;
    let mut edges = Vec::with_capacity(n - 1);
    for _ in 0..n {
        let u = (0..n)
            .filter(|&v| !in_tree[v])
            .min_by(|&a, &b| best[a].total_cmp(&best[b]))
            .expect("nonempty");
        in_tree[u] = true;
        if parent[u] != usize::MAX {
            edges.push((parent[u], u, best[u]));
        }
        for v in 0..n {
            if !in_tree[v] {
                let d = (group[u] - group[v]).norm();
                if d < best[v] {
                    best[v] = d;
                    parent[v] = u;
                }
            }
        }
    }
    let cut = edges
        .iter()
        .enumerate()
        .max_by(|a, b| a.1 .2.total_cmp(&b.1 .2))
        .map(|(i, _)| i)
        .expect("at least one edge");
    // connected components of the tree without the cut edge
    let mut adj = vec![Vec::new(); n];
    for (i, &(u, v, _)) in edges.iter().enumerate() {
        if i != cut {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mut side = vec![false; n];
    let mut stack = vec![edges[cut].0];
    side[edges[cut].0] = true;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !side[v] {
                side[v] = true;
                stack.push(v);
            }
        }
    }
    (0..n).partition(|&i| side[i])
}

/// Newton on the `(m-1)`-th derivative, where an `m`-fold root is simple,
/// kept inside the certified disc. Real starts stay real.
fn polish(monic: &[f64], start: Complex64, m: usize, radius: f64) -> Complex64 {
    let d = derivative(monic, m - 1);
    newton(&d, start, radius.max(1e-6 * (1.0 + start.norm()))).unwrap_or(start)
}
