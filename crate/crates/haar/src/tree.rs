//! Vertices of the Bruhat-Tits tree of PGL_2(F).
//!
//! A vertex is a homothety class of O-lattices in F^2. Every class has a
//! unique column Hermite form [[t^a, b], [0, 1]] with b reduced mod t^a, and
//! left cosets g K_0 Z of G^ad are in bijection with vertices g.o, where o is
//! the class of O^2.

use std::collections::{HashMap, HashSet, VecDeque};

use gl_group::{GroupElement, Mat};
use local_field::{FieldElement, Valuation};

/// Canonical lattice class [[t^a, b], [0, 1]] with b = b mod t^a.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub a: i64,
    pub b: FieldElement,
}

impl Vertex {
    pub fn origin(p: u8) -> Self {
        Self { a: 0, b: FieldElement::zero(p) }
    }

    pub fn prime(&self) -> u8 {
        self.b.prime()
    }

    /// The class of the lattice spanned by the columns of h.
    pub fn from_columns(h: &Mat) -> Self {
        assert_eq!(h.dim(), 2, "tree vertices are for GL_2");
        let (mut c1, mut c2) = ((h.get(0, 0).clone(), h.get(1, 0).clone()), (h.get(0, 1).clone(), h.get(1, 1).clone()));
        if c2.1.valuation() > c1.1.valuation() {
            std::mem::swap(&mut c1, &mut c2);
        }
        // clear the bottom entry of c1 with an O-multiple of c2
        let q = &c1.1 / &c2.1;
        let top = &c1.0 - &(&q * &c2.0);
        let a = top.val() - c2.1.val();
        let b = (&c2.0 / &c2.1).truncate(a);
        Self { a, b }
    }

    /// The representative [[t^a, b], [0, 1]].
    pub fn matrix(&self) -> GroupElement {
        let p = self.prime();
        GroupElement::from_rows(vec![
            vec![FieldElement::t_pow(p, self.a), self.b.clone()],
            vec![FieldElement::zero(p), FieldElement::one(p)],
        ])
        .expect("upper triangular with unit diagonal up to t^a")
    }

    /// Distance to the origin: the spread m_2 - m_1 of the Cartan exponents.
    pub fn distance(&self) -> i64 {
        let m1 = match self.b.valuation() {
            Valuation::Finite(v) => v.min(self.a).min(0),
            Valuation::Infinity => self.a.min(0),
        };
        self.a - 2 * m1
    }

    /// The l + 1 neighbours: index-l sublattices h [[t, c], [0, 1]] and h [[1, 0], [0, t]].
    pub fn neighbours(&self) -> Vec<Vertex> {
        let p = self.prime();
        let mut out: Vec<Vertex> = (0..p)
            .map(|c| Vertex { a: self.a + 1, b: &self.b + &FieldElement::laurent(p, self.a, &[c as i64]) })
            .collect();
        out.push(Vertex { a: self.a - 1, b: self.b.truncate(self.a - 1) });
        out
    }
}

/// Spread val det y - 2 minval y: the distance by which y moves the origin.
pub fn displacement(y: &Mat) -> i64 {
    let m = y.min_valuation().finite().expect("nonzero matrix");
    y.det().val() - 2 * m
}

/// Vertices at distance <= radius from the origin, in breadth-first order.
pub fn ball(p: u8, radius: i64) -> Vec<Vertex> {
    let origin = Vertex::origin(p);
    let mut seen: HashSet<Vertex> = HashSet::from([origin.clone()]);
    let mut order = vec![origin];
    let mut head = 0;
    while head < order.len() {
        let v = order[head].clone();
        head += 1;
        if v.distance() >= radius {
            continue;
        }
        for w in v.neighbours() {
            if w.distance() > v.distance() && seen.insert(w.clone()) {
                order.push(w);
            }
        }
    }
    order
}

/// Number of vertices at distance exactly d.
pub fn sphere_size(ell: u8, d: i64) -> i128 {
    if d == 0 {
        1
    } else {
        (ell as i128 + 1) * (ell as i128).pow(d as u32 - 1)
    }
}

/// h^-1 x h for the representative h of v.
pub fn conjugate_to(v: &Vertex, x: &Mat) -> Mat {
    let h = v.matrix();
    h.inv().mul(x).mul(h.matrix())
}

/// The vertices fixed by x (x v = v), found by descending the displacement
/// from the origin and then flooding the fixed set, which is convex. The
/// result is empty when x fixes no vertex. The caller must make sure the
/// fixed set is finite (x elliptic); `limit` caps the search otherwise.
pub fn fixed_vertices(x: &Mat, limit: usize) -> Option<Vec<Vertex>> {
    let p = x.prime();
    let mut v = Vertex::origin(p);
    let mut d = displacement(&conjugate_to(&v, x));
    let mut steps = 0;
    while d > 0 {
        let next = v.neighbours().into_iter().map(|w| {
            let dw = displacement(&conjugate_to(&w, x));
            (dw, w)
        });
        let (dw, w) = next.min_by_key(|(dw, _)| *dw).expect("l + 1 neighbours");
        if dw >= d {
            return Some(Vec::new());
        }
        v = w;
        d = dw;
        steps += 1;
        if steps > limit {
            return None;
        }
    }
    let mut seen: HashMap<Vertex, ()> = HashMap::from([(v.clone(), ())]);
    let mut queue = VecDeque::from([v.clone()]);
    let mut out = vec![v];
    while let Some(u) = queue.pop_front() {
        for w in u.neighbours() {
            if seen.contains_key(&w) {
                continue;
            }
            seen.insert(w.clone(), ());
            if displacement(&conjugate_to(&w, x)) == 0 {
                out.push(w.clone());
                queue.push_back(w);
                if out.len() > limit {
                    return None;
                }
            }
        }
    }
    Some(out)
}
