use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::Matrix;

/// Corner of a unit square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Corner {
    BottomLeft = 0,
    BottomRight = 1,
    TopLeft = 2,
    TopRight = 3,
}

/// The three standard generators of `SL(2, Z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    /// `[[1, 1], [0, 1]]`
    TUpper,
    /// `[[1, 0], [-1, 1]]`, the horocycle matrix `h_1`.
    TLower,
    /// `[[0, -1], [1, 0]]`
    S,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::TUpper, Generator::TLower, Generator::S];

    pub fn matrix(self) -> Matrix<f64> {
        let rows = match self {
            Generator::TUpper => [[1.0, 1.0], [0.0, 1.0]],
            Generator::TLower => [[1.0, 0.0], [-1.0, 1.0]],
            Generator::S => [[0.0, -1.0], [1.0, 0.0]],
        };
        Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).expect("2x2 rows")
    }
}

/// Square-tiled surface: square `i` has right neighbour `h[i]` and top
/// neighbour `v[i]` (squares are numbered from 0 internally and from 1 in
/// cycle notation).
///
/// Vertices are classes of square corners. Vertices of cone angle above
/// `2 pi` are marked; a surface without such vertices (genus one) marks all
/// of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Origami {
    h: Vec<usize>,
    v: Vec<usize>,
    h_inv: Vec<usize>,
    v_inv: Vec<usize>,
    corner_vertex: Vec<usize>,
    vertex_corners: Vec<usize>,
    marked: Vec<bool>,
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&j| j < p.len() && !std::mem::replace(&mut seen[j], true))
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl Origami {
    pub fn new(h: Vec<usize>, v: Vec<usize>) -> Result<Self> {
        let d = h.len();
        if d == 0 || v.len() != d {
            return Err(Error::InvalidOrigami("permutations must have equal positive degree".into()));
        }
        if !is_permutation(&h) || !is_permutation(&v) {
            return Err(Error::InvalidOrigami("not a permutation".into()));
        }
        let mut seen = vec![false; d];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(i) = queue.pop_front() {
            for j in [h[i], v[i]] {
                if !seen[j] {
                    seen[j] = true;
                    reached += 1;
                    queue.push_back(j);
                }
            }
        }
        if reached != d {
            return Err(Error::InvalidOrigami("squares do not form a connected surface".into()));
        }

        let idx = |i: usize, c: Corner| 4 * i + c as usize;
        let mut parent: Vec<usize> = (0..4 * d).collect();
        let mut join = |a: usize, b: usize| {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra.max(rb)] = ra.min(rb);
        };
        for i in 0..d {
            join(idx(i, Corner::BottomRight), idx(h[i], Corner::BottomLeft));
            join(idx(i, Corner::TopRight), idx(h[i], Corner::TopLeft));
            join(idx(i, Corner::TopLeft), idx(v[i], Corner::BottomLeft));
            join(idx(i, Corner::TopRight), idx(v[i], Corner::BottomRight));
        }
        let mut label = vec![usize::MAX; 4 * d];
        let mut corner_vertex = vec![0; 4 * d];
        let mut vertex_corners = Vec::new();
        for (c, slot) in corner_vertex.iter_mut().enumerate() {
            let root = find(&mut parent, c);
            if label[root] == usize::MAX {
                label[root] = vertex_corners.len();
                vertex_corners.push(0);
            }
            *slot = label[root];
            vertex_corners[label[root]] += 1;
        }
        let any_cone = vertex_corners.iter().any(|&k| k > 4);
        let marked = vertex_corners.iter().map(|&k| !any_cone || k > 4).collect();
        Ok(Self {
            h_inv: invert(&h),
            v_inv: invert(&v),
            h,
            v,
            corner_vertex,
            vertex_corners,
            marked,
        })
    }

    /// The square torus: one square, one marked vertex.
    pub fn torus() -> Self {
        Self::new(vec![0], vec![0]).expect("valid")
    }

    /// Parses two lines `h=(1 2)(3)` and `v=(1 3)(2)`; labels run from 1 to
    /// the degree, and omitted labels are fixed points.
    pub fn parse(text: &str) -> Result<Self> {
        let mut h = None;
        let mut v = None;
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let (key, cycles) = line
                .split_once('=')
                .ok_or_else(|| Error::InvalidOrigami(format!("expected `h=...` or `v=...`, got {line:?}")))?;
            let parsed = parse_cycles(cycles)?;
            let slot = match key.trim() {
                "h" => &mut h,
                "v" => &mut v,
                other => return Err(Error::InvalidOrigami(format!("unknown permutation {other:?}"))),
            };
            if slot.replace(parsed).is_some() {
                return Err(Error::InvalidOrigami(format!("{} given twice", key.trim())));
            }
        }
        let (h, v) = match (h, v) {
            (Some(h), Some(v)) => (h, v),
            _ => return Err(Error::InvalidOrigami("need both h and v".into())),
        };
        let degree = h.iter().chain(&v).flatten().copied().max().unwrap_or(1);
        Self::new(cycles_to_map(&h, degree)?, cycles_to_map(&v, degree)?)
    }

    pub fn degree(&self) -> usize {
        self.h.len()
    }

    pub fn h(&self) -> &[usize] {
        &self.h
    }

    pub fn v(&self) -> &[usize] {
        &self.v
    }

    pub fn h_inv(&self) -> &[usize] {
        &self.h_inv
    }

    pub fn v_inv(&self) -> &[usize] {
        &self.v_inv
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_corners.len()
    }

    pub fn vertex_of(&self, square: usize, corner: Corner) -> usize {
        self.corner_vertex[4 * square + corner as usize]
    }

    /// Cone angle of a vertex in multiples of `2 pi`.
    pub fn cone_angle(&self, vertex: usize) -> usize {
        self.vertex_corners[vertex] / 4
    }

    pub fn is_marked(&self, vertex: usize) -> bool {
        self.marked[vertex]
    }

    /// `2 - 2g` equals the sum over vertices of `1 - angle / 2 pi`.
    pub fn genus(&self) -> usize {
        let excess: usize = (0..self.vertex_count()).map(|k| self.cone_angle(k) - 1).sum();
        excess / 2 + 1
    }

    pub fn act(&self, g: Generator) -> Origami {
        let (h, v) = match g {
            Generator::TUpper => (self.h.clone(), compose(&self.v, &self.h_inv)),
            Generator::TLower => (compose(&self.h, &self.v), self.v.clone()),
            Generator::S => (self.v_inv.clone(), self.h.clone()),
        };
        Origami::new(h, v).expect("generators preserve connectedness")
    }

    pub fn act_inverse(&self, g: Generator) -> Origami {
        let (h, v) = match g {
            Generator::TUpper => (self.h.clone(), compose(&self.v, &self.h)),
            Generator::TLower => (compose(&self.h, &self.v_inv), self.v.clone()),
            Generator::S => (self.v.clone(), self.h_inv.clone()),
        };
        Origami::new(h, v).expect("generators preserve connectedness")
    }

    /// `g^k` for the unipotent generators, in `O(d)` regardless of `k`.
    pub fn act_power(&self, g: Generator, k: i64) -> Origami {
        let (h, v) = match g {
            Generator::TUpper => (self.h.clone(), compose(&self.v, &power(&self.h, -k))),
            Generator::TLower => (compose(&self.h, &power(&self.v, k)), self.v.clone()),
            Generator::S => {
                let mut o = self.clone();
                for _ in 0..k.rem_euclid(4) {
                    o = o.act(Generator::S);
                }
                return o;
            }
        };
        Origami::new(h, v).expect("generators preserve connectedness")
    }

    /// Relabelling `phi` with `phi h phi^-1 = h'` and `phi v phi^-1 = v'`.
    pub fn isomorphism(&self, other: &Origami) -> Option<Vec<usize>> {
        let d = self.degree();
        if other.degree() != d {
            return None;
        }
        'image: for target in 0..d {
            let mut phi = vec![usize::MAX; d];
            phi[0] = target;
            let mut queue = VecDeque::from([0usize]);
            while let Some(i) = queue.pop_front() {
                for (a, b) in [(&self.h, &other.h), (&self.v, &other.v)] {
                    let (j, k) = (a[i], b[phi[i]]);
                    if phi[j] == usize::MAX {
                        phi[j] = k;
                        queue.push_back(j);
                    } else if phi[j] != k {
                        continue 'image;
                    }
                }
            }
            if is_permutation(&phi) {
                return Some(phi);
            }
        }
        None
    }

    pub fn is_isomorphic(&self, other: &Origami) -> bool {
        self.isomorphism(other).is_some()
    }

    /// Whether `h_alpha` fixes the surface up to relabelling squares.
    pub fn veech_h_alpha_check(&self, alpha: u64) -> bool {
        let mut o = self.clone();
        for _ in 0..alpha {
            o = o.act(Generator::TLower);
        }
        o.is_isomorphic(self)
    }

    /// Least `alpha >= 1` with `h_alpha` in the Veech group, searched up to `cap`.
    pub fn minimal_alpha(&self, cap: u64) -> Option<u64> {
        let mut o = self.clone();
        for alpha in 1..=cap {
            o = o.act(Generator::TLower);
            if o.is_isomorphic(self) {
                return Some(alpha);
            }
        }
        None
    }
}

impl fmt::Display for Origami {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "h={}", cycle_notation(&self.h))?;
        write!(f, "v={}", cycle_notation(&self.v))
    }
}

/// `p^k` by rotating each cycle.
fn power(p: &[usize], k: i64) -> Vec<usize> {
    let mut out = vec![usize::MAX; p.len()];
    for start in 0..p.len() {
        if out[start] != usize::MAX {
            continue;
        }
        let mut cycle = vec![start];
        let mut j = p[start];
        while j != start {
            cycle.push(j);
            j = p[j];
        }
        let len = cycle.len() as i64;
        for (i, &c) in cycle.iter().enumerate() {
            out[c] = cycle[(i as i64 + k).rem_euclid(len) as usize];
        }
    }
    out
}

/// `(a . b)[i] = a[b[i]]`.
fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&j| a[j]).collect()
}

fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>> {
    let text = text.trim();
    let mut cycles = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::InvalidOrigami(format!("expected '(' in {text:?}")))?;
        let (inner, after) = open
            .split_once(')')
            .ok_or_else(|| Error::InvalidOrigami(format!("unclosed cycle in {text:?}")))?;
        let cycle = inner
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| match t.parse::<usize>() {
                Ok(k) if k >= 1 => Ok(k),
                _ => Err(Error::InvalidOrigami(format!("bad square label {t:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = after.trim_start();
    }
    Ok(cycles)
}

fn cycles_to_map(cycles: &[Vec<usize>], degree: usize) -> Result<Vec<usize>> {
    let mut map: Vec<usize> = (0..degree).collect();
    let mut seen = vec![false; degree];
    for cycle in cycles {
        for (k, &label) in cycle.iter().enumerate() {
            if std::mem::replace(&mut seen[label - 1], true) {
                return Err(Error::InvalidOrigami(format!("label {label} repeated")));
            }
            map[label - 1] = cycle[(k + 1) % cycle.len()] - 1;
        }
    }
    Ok(map)
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut labels = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            labels.push((i + 1).to_string());
            i = p[i];
        }
        out.push('(');
        out.push_str(&labels.join(" "));
        out.push(')');
    }
    out
}
