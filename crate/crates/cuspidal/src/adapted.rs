//! Pullbacks [g] -> m(g x g^-1) of a depth-zero function, with their adapted
//! radius: the least i with support inside (G^ad)_i (A / Z(G)).
//!
//! m(g x g^-1) != 0 forces g^-1 x g in Z K_0, that is, x fixes the vertex
//! g^-1.o. With ov_{G^ad} = ceil(d / 3) in terms of the tree distance d, the
//! radius is ceil(D / 3), where D is the largest distance from a fixed
//! vertex of x to the fixed set of A: the origin when A = Z(G), the standard
//! apartment when A is the diagonal torus.

use gl_group::{is_elliptic_in_levi, Composition, GroupElement, Mat};
use haar::tree::{ball, displacement, fixed_vertices, Vertex};
use haar::{pullback_unipotent_integral, AdFunction, ConjugationPullback, ExactOptions, IntegralResult, TestFunction};
use local_field::{Cyc, FieldElement};

use crate::depth_zero::DepthZeroFunction;
use crate::CuspidalError;

/// A = Z(M) for the Levi M in which x is elliptic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Torus {
    /// M = G, x elliptic.
    Center,
    /// M = T, x regular diagonal.
    Diagonal,
}

#[derive(Clone, Debug)]
pub struct AdaptedFunction {
    pub m: DepthZeroFunction,
    pub x: GroupElement,
    pub torus: Torus,
    /// Adapted radius i_1.
    pub radius: i64,
    /// Largest distance from a fixed vertex to the fixed set of A.
    pub extent: i64,
    /// Vertices examined while certifying the extent.
    pub swept: usize,
}

/// Vertices [[t^a, 1], [0, 1]], at distance a from the standard apartment.
/// Every vertex off the apartment is A-equivalent to one of these.
fn off_apartment(p: u8, a: i64) -> Vertex {
    Vertex { a, b: FieldElement::one(p).truncate(a) }
}

fn fixes(x: &Mat, v: &Vertex) -> bool {
    displacement(&haar::tree::conjugate_to(v, x)) == 0
}

pub fn pullback_adapted(m: &DepthZeroFunction, x: &GroupElement) -> Result<AdaptedFunction, CuspidalError> {
    let p = m.prime();
    let (torus, extent, swept) = if is_elliptic_in_levi(x.matrix(), &Composition::whole(2))? {
        let fixed = fixed_vertices(x.matrix(), 1 << 16).ok_or(CuspidalError::NotEllipticInLevi)?;
        let extent = fixed.iter().map(Vertex::distance).max().unwrap_or(0);
        (Torus::Center, extent, fixed.len())
    } else if x.matrix().is_diagonal() && x.get(0, 0) != x.get(1, 1) {
        // fixed iff a <= v(x1 - x2) - v(x1), and none when v(x1) != v(x2);
        // the sweep walks the family until it leaves the fixed set
        let mut extent = 0;
        let mut a = 1;
        while fixes(x.matrix(), &off_apartment(p, a)) {
            extent = a;
            a += 1;
            if a > 1 << 12 {
                return Err(CuspidalError::NotEllipticInLevi);
            }
        }
        (Torus::Diagonal, extent, a as usize)
    } else {
        return Err(CuspidalError::NotEllipticInLevi);
    };
    Ok(AdaptedFunction { m: m.clone(), x: x.clone(), torus, radius: (extent + 2) / 3, extent, swept })
}

impl AdaptedFunction {
    fn pullback(&self) -> ConjugationPullback<'_> {
        ConjugationPullback::new(&self.m, self.x.matrix().clone())
    }

    /// Re-sweeps the shell of width `extra` just outside the certified
    /// extent and reports whether it contains no fixed vertex.
    pub fn recheck(&self, extra: i64) -> bool {
        let p = self.m.prime();
        let x = self.x.matrix();
        match self.torus {
            Torus::Center => {
                ball(p, self.extent + extra).iter().filter(|v| v.distance() > self.extent).all(|v| !fixes(x, v))
            }
            Torus::Diagonal => (self.extent + 1..=self.extent + extra).all(|a| !fixes(x, &off_apartment(p, a))),
        }
    }

    /// int over V_a of [g u] -> m(g u x u^-1 g^-1) for a = diag(t, 1) (upper
    /// radical) and a^-1 (lower). Only meaningful for the diagonal torus.
    pub fn a_cuspidal_integrals(&self, g: &GroupElement, opts: &ExactOptions) -> Result<Vec<IntegralResult>, CuspidalError> {
        let p = self.m.prime();
        let mut out = Vec::new();
        for (i, j) in [(0, 1), (1, 0)] {
            let dir = haar::elementary(p, i, j);
            out.push(pullback_unipotent_integral(&self.m, self.x.matrix(), g, &dir, opts)?);
        }
        Ok(out)
    }
}

impl AdFunction for AdaptedFunction {
    fn prime(&self) -> u8 {
        self.m.prime()
    }

    fn eval(&self, g: &GroupElement) -> Cyc {
        self.pullback().eval(g)
    }

    fn constant_on(&self, left: &GroupElement, j: i64, right: &GroupElement) -> Option<Cyc> {
        self.pullback().constant_on(left, j, right)
    }
}
