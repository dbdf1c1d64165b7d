//! Wheel and Pont Neuf diagrams with their closed-form weight polynomials.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::casimir::{CasimirMonomial, CasimirPoly};
use crate::diagram::{Dart, Diagram, DiagramBuilder};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

/// Runs an edge from `from` to `to`, subdivided by `legs` trivalent vertices
/// each carrying one leg on the given side of the direction of travel.
fn leg_path(b: &mut DiagramBuilder, from: Dart, to: Dart, legs: u32, side: Side) {
    let mut prev = from;
    for _ in 0..legs {
        let [d0, d1, d2] = b.trivalent();
        let (fwd, back, leg) = match side {
            Side::Left => (d0, d2, d1),
            Side::Right => (d0, d1, d2),
        };
        b.edge(prev, back);
        b.leg(leg);
        prev = fwd;
    }
    b.edge(prev, to);
}

/// Circle of `u` trivalent vertices, each with one outward leg. Degree `u`.
pub fn wheel(u: usize) -> Result<Diagram> {
    if u == 0 {
        return Err(Error::InvalidParams("wheel needs at least one leg".into()));
    }
    let mut b = DiagramBuilder::new();
    // [forward, backward, leg]: the leg sits right of the counterclockwise
    // direction of travel, i.e. outside the circle
    let verts: Vec<[Dart; 3]> = (0..u).map(|_| b.trivalent()).collect();
    for i in 0..u {
        b.edge(verts[i][0], verts[(i + 1) % u][1]);
    }
    for v in &verts {
        b.leg(v[2]);
    }
    Ok(b.build())
}

fn binomial_row(n: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for j in 1..=n {
        let next = &row[j as usize - 1] * BigInt::from(n - j + 1) / BigInt::from(j);
        row.push(next);
    }
    row
}

/// `Σ_{j=0}^{u} (-1)^j C(u, j) c_j c_{u-j}` for even `u`.
pub fn wheel_closed_form(u: usize) -> Result<CasimirPoly> {
    if u % 2 != 0 {
        return Err(Error::OddLegCount(u));
    }
    let row = binomial_row(u as u32);
    let mut p = CasimirPoly::zero();
    for (j, c) in row.into_iter().enumerate() {
        let c = if j % 2 == 0 { c } else { -c };
        p.add_term(CasimirMonomial::new([j as u32, (u - j) as u32]), c);
    }
    Ok(p)
}

/// Parameters `(a_1, ..., a_k; b)` with `0 ≤ a_1 ≤ ... ≤ a_k ≤ b`, `k ≥ 1`
/// and `u = Σ a_i + 2b` even.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PontNeufParams {
    a: Vec<u32>,
    b: u32,
}

impl PontNeufParams {
    pub fn new(a: Vec<u32>, b: u32) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidParams("k must be at least 1".into()));
        }
        if a.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidParams("a not weakly increasing".into()));
        }
        if *a.last().unwrap() > b {
            return Err(Error::InvalidParams(format!("a_k = {} exceeds b = {b}", a.last().unwrap())));
        }
        let p = PontNeufParams { a, b };
        if p.u() % 2 != 0 {
            return Err(Error::OddLegCount(p.u()));
        }
        Ok(p)
    }

    pub fn a(&self) -> &[u32] {
        &self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn k(&self) -> usize {
        self.a.len()
    }

    /// Number of legs.
    pub fn u(&self) -> usize {
        self.a.iter().map(|&x| x as usize).sum::<usize>() + 2 * self.b as usize
    }

    pub fn degree(&self) -> usize {
        self.u() + self.k()
    }

    /// The witness monomial `c_{a_1} ... c_{a_k} c_b^2`.
    pub fn witness(&self) -> CasimirMonomial {
        CasimirMonomial::new(self.a.iter().copied().chain([self.b, self.b]))
    }
}

impl std::fmt::Display for PontNeufParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let a: Vec<String> = self.a.iter().map(|x| x.to_string()).collect();
        write!(f, "({};{})", a.join(","), self.b)
    }
}

/// The Pont Neuf diagram on a 3-connected planar cubic core.
///
/// The core is a closed ladder on `2k` vertices: a top path
/// `X = U_0, U_1, ..., U_k = Y`, a bottom path `X, D_1, ..., D_{k-1}, Y`,
/// rungs `U_i D_i` and an outer edge `X Y` drawn below everything. Its faces
/// are the `k` ladder cells `F_i`, the region `I` enclosed by the bottom path
/// and the outer edge, and the unbounded face `O`. The `a_i` legs sit on the
/// top edge `U_{i-1} U_i` (between `F_i` and `O`), the `2b` legs on the outer
/// edge (between `I` and `O`), all pointing into `O` in the `+1` state.
pub fn pont_neuf(params: &PontNeufParams) -> Diagram {
    let k = params.k();
    let mut b = DiagramBuilder::new();
    // angles: X sees top at 45°, outer arc at 225°, bottom at 315°
    let [x_top, x_arc, x_bot] = b.trivalent();
    // Y sees top at 135°, bottom at 225°, outer arc at 315°
    let [y_top, y_bot, y_arc] = b.trivalent();

    let mut upper = Vec::with_capacity(k.saturating_sub(1));
    let mut lower = Vec::with_capacity(k.saturating_sub(1));
    for _ in 1..k {
        // U_i: right 0°, left 180°, rung 270°
        let [ur, ul, ug] = b.trivalent();
        // D_i: right 0°, rung 90°, left 180°
        let [dr, dg, dl] = b.trivalent();
        b.edge(ug, dg);
        upper.push((ul, ur));
        lower.push((dl, dr));
    }

    let top_starts = std::iter::once(x_top).chain(upper.iter().map(|u| u.1));
    let top_ends = upper.iter().map(|u| u.0).chain(std::iter::once(y_top));
    for ((from, to), &legs) in top_starts.zip(top_ends).zip(&params.a) {
        leg_path(&mut b, from, to, legs, Side::Left);
    }
    let bot_starts = std::iter::once(x_bot).chain(lower.iter().map(|d| d.1));
    let bot_ends = lower.iter().map(|d| d.0).chain(std::iter::once(y_bot));
    for (from, to) in bot_starts.zip(bot_ends) {
        leg_path(&mut b, from, to, 0, Side::Left);
    }
    // travelling X -> Y along the outer arc, O lies on the right
    leg_path(&mut b, x_arc, y_arc, 2 * params.b, Side::Right);
    b.build()
}

/// `2 Σ (-1)^{Σj + l} Π C(a_i, j_i) C(2b, l) c_{j_1} ... c_{j_k} c_l c_{u - Σj - l}`.
pub fn pont_neuf_cd_closed_form(params: &PontNeufParams) -> CasimirPoly {
    let u = params.u() as u32;
    let rows: Vec<Vec<BigInt>> = params.a.iter().map(|&a| binomial_row(a)).collect();
    let road = binomial_row(2 * params.b);
    let two = BigInt::from(2);
    let mut out = CasimirPoly::zero();
    let mut js = vec![0u32; params.k()];
    loop {
        let sum_j: u32 = js.iter().sum();
        let prod = rows
            .iter()
            .zip(&js)
            .fold(two.clone(), |acc, (row, &j)| acc * &row[j as usize]);
        for (l, c) in road.iter().enumerate() {
            let l = l as u32;
            let mut coeff = &prod * c;
            if (sum_j + l) % 2 == 1 {
                coeff = -coeff;
            }
            let m = CasimirMonomial::new(js.iter().copied().chain([l, u - sum_j - l]));
            out.add_term(m, coeff);
        }
        // odometer over 0 ≤ j_i ≤ a_i
        let mut i = 0;
        loop {
            if i == js.len() {
                return out;
            }
            if js[i] < params.a[i] {
                js[i] += 1;
                break;
            }
            js[i] = 0;
            i += 1;
        }
    }
}

/// `S_{k,u}` in ascending lexicographic order on `(a_1, ..., a_k)`.
/// Empty for odd `u` or `k = 0`.
pub fn enumerate_s(k: usize, u: u32) -> Vec<PontNeufParams> {
    fn rec(k: usize, u: u32, lo: u32, used: u32, prefix: &mut Vec<u32>, out: &mut Vec<PontNeufParams>) {
        if prefix.len() == k {
            let rest = u - used;
            if rest % 2 == 0 && rest / 2 >= *prefix.last().unwrap() {
                out.push(PontNeufParams { a: prefix.clone(), b: rest / 2 });
            }
            return;
        }
        // remaining parts and 2b are all at least x
        let slots = (k - prefix.len()) as u32 + 2;
        let mut x = lo;
        while used + x * slots <= u {
            prefix.push(x);
            rec(k, u, x, used + x, prefix, out);
            prefix.pop();
            x += 1;
        }
    }
    let mut out = Vec::new();
    if k == 0 || u % 2 != 0 {
        return out;
    }
    rec(k, u, 0, 0, &mut Vec::with_capacity(k), &mut out);
    out
}
