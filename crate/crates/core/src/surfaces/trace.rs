//! Straight-line flow on square-tiled surfaces in rational directions.
//!
//! A ray of primitive integer direction `(p, q)` leaving a corner crosses
//! `p - 1` vertical and `|q| - 1` horizontal edges before it reaches the next
//! corner, after displacement exactly `(p, q)`. The order of crossings is
//! fixed by comparing `a/p` with `b/|q|`, all in integers. At a regular
//! corner the ray continues straight; at a marked vertex it stops.

use num_integer::Integer;

use super::origami::{Corner, Generator, Origami};
use crate::error::{Error, Result};

/// A saddle connection found by the tracer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SaddleConnection {
    pub holonomy: (i64, i64),
    pub start_vertex: usize,
    pub end_vertex: usize,
    /// Square entered when leaving the start vertex.
    pub start_square: usize,
    /// Corner of `start_square` at which the ray starts.
    pub start_corner: Corner,
}

fn check_direction(p: i64, q: i64) -> Result<()> {
    let half_plane = p > 0 || (p == 0 && q == 1);
    if !half_plane || p.gcd(&q) != 1 {
        return Err(Error::InvalidArgument(format!(
            "direction ({p}, {q}) must be primitive with p > 0, or (0, 1)"
        )));
    }
    Ok(())
}

/// Every saddle connection in direction `(p, q)`, where `p > 0` or
/// `(p, q) = (0, 1)`. The opposite direction is the reversal of these.
pub fn saddle_connections(o: &Origami, p: i64, q: i64) -> Result<Vec<SaddleConnection>> {
    check_direction(p, q)?;
    let start_corner = if q < 0 { Corner::TopLeft } else { Corner::BottomLeft };
    let mut out = Vec::new();
    for square in 0..o.degree() {
        let vertex = o.vertex_of(square, start_corner);
        if !o.is_marked(vertex) {
            continue;
        }
        let (k, end_vertex) = run(o, square, p, q)?;
        out.push(SaddleConnection {
            holonomy: (k * p, k * q),
            start_vertex: vertex,
            end_vertex,
            start_square: square,
            start_corner,
        });
    }
    Ok(out)
}

/// Least `k` such that `k (p, q)` is the holonomy of a saddle connection.
///
/// Holonomies of `A O` are `A` applied to those of `O`, so a Euclidean
/// reduction by powers of the two shears carries `(p, q)` to `(1, 0)` or
/// `(0, 1)`, where tracing takes `k` unit steps.
pub fn min_multiple(o: &Origami, p: i64, q: i64) -> Result<i64> {
    check_direction(p, q)?;
    if p == 0 {
        return min_multiple_traced(o, 0, 1);
    }
    let (mut a, mut b) = (p, q);
    let mut cur = o.clone();
    loop {
        let k = b.div_euclid(a);
        if k != 0 {
            cur = cur.act_power(Generator::TLower, k);
            b = b.rem_euclid(a);
        }
        if b == 0 {
            return min_multiple_traced(&cur, 1, 0);
        }
        cur = cur.act_power(Generator::TUpper, -(a / b));
        a %= b;
        if a == 0 {
            return min_multiple_traced(&cur, 0, 1);
        }
    }
}

/// [`min_multiple`] by following the ray in direction `(p, q)` directly.
pub fn min_multiple_traced(o: &Origami, p: i64, q: i64) -> Result<i64> {
    saddle_connections(o, p, q)?
        .iter()
        .map(|s| if p != 0 { s.holonomy.0 / p } else { s.holonomy.1 })
        .min()
        .ok_or_else(|| Error::InvalidOrigami("surface without marked vertices".into()))
}

/// Follow the ray from the start corner of `square` until it meets a marked
/// vertex; returns the number of unit steps `(p, q)` and the vertex.
fn run(o: &Origami, mut square: usize, p: i64, q: i64) -> Result<(i64, usize)> {
    let (h, v, v_inv) = (o.h(), o.v(), o.v_inv());
    let up = q > 0;
    let qa = q.abs();
    let guard = 4 * o.degree() as i64 + 4;
    for k in 1..=guard {
        // interior crossings: vertical edges at a/p, horizontal at b/|q|
        let (mut a, mut b) = (1, 1);
        while a < p || b < qa {
            if b >= qa || (a < p && a * qa < b * p) {
                square = h[square];
                a += 1;
            } else {
                square = if up { v[square] } else { v_inv[square] };
                b += 1;
            }
        }
        let (end_corner, next) = match (p, q) {
            (0, _) => (Corner::TopLeft, v[square]),
            (_, 0) => (Corner::BottomRight, h[square]),
            _ if up => (Corner::TopRight, v[h[square]]),
            _ => (Corner::BottomRight, v_inv[h[square]]),
        };
        let vertex = o.vertex_of(square, end_corner);
        if o.is_marked(vertex) {
            return Ok((k, vertex));
        }
        square = next;
    }
    Err(Error::InvalidOrigami("ray did not close up".into()))
}
