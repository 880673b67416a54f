//! The category T(Mod(F_q), K).
//!
//! Hom-spaces between generators `[x] -> [y]` have the relations
//! `W ⊆ x ⊕ y` as a basis. A general correspondence `c -> x ⊕ y` with image
//! `W` and kernel of dimension `k` is the basis element `W` scaled by `t^k`.
//! Coordinates of `x ⊕ y` list the `x` coordinates first.

mod core;
mod cut;
mod idempotents;
mod morphism;
mod object;
pub mod sample;

use rayon::prelude::*;

pub use self::core::{core_and_length, core_factorization, CoreInfo};
pub use cut::CutObject;
pub use idempotents::LatticeIdempotents;
pub use morphism::{BlockJson, Morphism, MorphismJson, TermJson};
pub use object::{GenObject, SumObject};

use crate::arith::{Param, Scalar};
use crate::error::{Error, Result};
use crate::gfq::{pullback, FqField, FqMatrix, Subspace};
use crate::lattice::{all_subspaces, subspace_count};

/// Default cap on the size of a Hom-space basis that may be enumerated.
pub const DEFAULT_MAX_HOM: u128 = 4096;

/// A correspondence `c -> x ⊕ y`, given by its two components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correspondence {
    pub fx: FqMatrix,
    pub fy: FqMatrix,
}

impl Correspondence {
    pub fn new(fx: FqMatrix, fy: FqMatrix) -> Result<Self> {
        if fx.cols() != fy.cols() {
            return Err(Error::DimensionMismatch(format!(
                "correspondence components have sources of dimension {} and {}",
                fx.cols(),
                fy.cols()
            )));
        }
        Ok(Correspondence { fx, fy })
    }

    pub fn source_dim(&self) -> usize {
        self.fx.cols()
    }

    /// The inclusion of a relation, read as a correspondence from its own basis.
    pub fn of_relation(w: &Subspace, dx: usize) -> Self {
        let b = w.basis();
        Correspondence {
            fx: b.col_block(0, dx).transpose(),
            fy: b.col_block(dx, w.ambient()).transpose(),
        }
    }

    /// The pullback `c ×_y d -> x ⊕ z` of `self: c -> x ⊕ y` and
    /// `other: d -> y ⊕ z`, without passing to classes.
    pub fn compose(&self, field: &FqField, other: &Correspondence) -> Result<Correspondence> {
        let p = pullback(field, &self.fy, &other.fx)?;
        let (c, d) = (self.source_dim(), other.source_dim());
        let pb = p.basis();
        let left = pb.col_block(0, c).transpose();
        let right = pb.col_block(c, c + d).transpose();
        Correspondence::new(self.fx.mul(field, &left)?, other.fy.mul(field, &right)?)
    }
}

/// The category at a fixed field and parameter mode. Every operation is pure.
#[derive(Clone, Debug)]
pub struct InterpCategory {
    field: FqField,
    param: Param,
}

impl InterpCategory {
    pub fn new(field: FqField, param: Param) -> Self {
        InterpCategory { field, param }
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn param(&self) -> &Param {
        &self.param
    }

    pub fn with_param(&self, param: Param) -> Self {
        InterpCategory::new(self.field.clone(), param)
    }

    /// `dim Hom(X, Y)`: the number of subspaces of each block's ambient space.
    pub fn hom_dim(&self, x: &SumObject, y: &SumObject) -> Result<u128> {
        let q = self.field.q();
        let mut total = 0u128;
        for &a in x.summands() {
            for &b in y.summands() {
                total += subspace_count(a + b, q)?;
            }
        }
        Ok(total)
    }

    /// The relation basis of `Hom(X, Y)`, block by block in `(sx, ty)` order and
    /// lattice order within a block.
    pub fn hom_basis(&self, x: &SumObject, y: &SumObject, max: u128) -> Result<Vec<Morphism>> {
        let dim = self.hom_dim(x, y)?;
        if dim > max {
            return Err(Error::LimitExceeded {
                what: "hom-space dimension",
                requested: dim,
                limit: max,
            });
        }
        let mut out = Vec::with_capacity(dim as usize);
        for (sx, &a) in x.summands().iter().enumerate() {
            for (ty, &b) in y.summands().iter().enumerate() {
                for w in all_subspaces(&self.field, a + b) {
                    out.push(Morphism::basis_term(
                        x.clone(),
                        y.clone(),
                        sx,
                        ty,
                        w,
                        Scalar::one(),
                    )?);
                }
            }
        }
        Ok(out)
    }

    pub fn identity(&self, x: &SumObject) -> Morphism {
        let mut m = Morphism::zero(x.clone(), x.clone());
        for (i, &d) in x.summands().iter().enumerate() {
            m.add_term(i, i, diagonal(d), Scalar::one())
                .expect("diagonal block");
        }
        m
    }

    /// Brings externally supplied coefficients into this category's mode.
    pub fn adopt(&self, f: &Morphism) -> Result<Morphism> {
        f.specialize(&self.param)
    }

    /// `t^k · W` for a correspondence with image `W` and kernel dimension `k`.
    pub fn class_of_correspondence(&self, c: &Correspondence) -> Result<Morphism> {
        let (dx, dy) = (c.fx.rows(), c.fy.rows());
        let stacked = c.fx.vstack(&c.fy)?;
        let image = stacked.image(&self.field);
        let k = c.source_dim() - image.dim();
        Morphism::basis_term(
            SumObject::generator(dx),
            SumObject::generator(dy),
            0,
            0,
            image,
            self.param.t_pow(k),
        )
    }

    /// Composite of relations `W ⊆ x ⊕ y` then `V ⊆ y ⊕ z`: the image `U` of
    /// the pullback in `x ⊕ z` and the dimension `k` of its kernel
    /// `{ b : (0, b) ∈ W, (b, 0) ∈ V }`.
    pub fn compose_relations(
        &self,
        w: &Subspace,
        dx: usize,
        v: &Subspace,
        dz: usize,
    ) -> Result<(Subspace, usize)> {
        let dy = w.ambient() - dx;
        if v.ambient() != dy + dz {
            return Err(Error::AmbientMismatch {
                left: v.ambient(),
                right: dy + dz,
            });
        }
        let field = &self.field;
        let (bw, bv) = (w.basis(), v.basis());
        let (nw, nv) = (w.dim(), v.dim());
        let fy = bw.col_block(dx, dx + dy).transpose();
        let gy = bv.col_block(0, dy).transpose();
        let p = pullback(field, &fy, &gy)?;
        let mut outer = FqMatrix::zeros(dx + dz, nw + nv);
        for r in 0..nw {
            for c in 0..dx {
                outer.set(c, r, bw.get(r, c));
            }
        }
        for r in 0..nv {
            for c in 0..dz {
                outer.set(dx + c, nw + r, bv.get(r, dy + c));
            }
        }
        let u = p.map(field, &outer)?;
        let k = p.dim() - u.dim();
        Ok((u, k))
    }

    /// `G ∘ F` for `F: X -> Y`, `G: Y -> Z`.
    pub fn compose(&self, g: &Morphism, f: &Morphism) -> Result<Morphism> {
        if f.target() != g.source() {
            return Err(Error::ObjectMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                g.source(),
                g.target(),
                f.source(),
                f.target()
            )));
        }
        let mut out = Morphism::zero(f.source().clone(), g.target().clone());
        for (sx, ty, w, a) in f.terms() {
            let dx = f.source().dim_of(sx);
            for (gy, tz, v, b) in g.terms() {
                if gy != ty {
                    continue;
                }
                let dz = g.target().dim_of(tz);
                let (u, k) = self.compose_relations(w, dx, v, dz)?;
                let coeff = a.mul(b).mul(&self.param.t_pow(k));
                out.add_term(sx, tz, u, coeff)?;
            }
        }
        Ok(out)
    }

    /// Relation-level tensor: `W ⊕ V` reshuffled from `(x, y, x', y')` to
    /// `(x, x', y, y')`.
    pub fn tensor_relations(&self, w: &Subspace, dx: usize, v: &Subspace, dx2: usize) -> Subspace {
        let dy = w.ambient() - dx;
        let dy2 = v.ambient() - dx2;
        let sum = w.direct_sum(v);
        let perm: Vec<usize> = (0..dx)
            .chain(dx + dy..dx + dy + dx2)
            .chain(dx..dx + dy)
            .chain(dx + dy + dx2..dx + dy + dx2 + dy2)
            .collect();
        sum.permute_coords(&self.field, &perm)
    }

    /// `F ⊗ G`.
    pub fn tensor(&self, f: &Morphism, g: &Morphism) -> Morphism {
        let source = f.source().tensor(g.source());
        let target = f.target().tensor(g.target());
        let (ns, nt) = (g.source().len(), g.target().len());
        let mut out = Morphism::zero(source, target);
        for (sx, ty, w, a) in f.terms() {
            let dx = f.source().dim_of(sx);
            for (sx2, ty2, v, b) in g.terms() {
                let dx2 = g.source().dim_of(sx2);
                let u = self.tensor_relations(w, dx, v, dx2);
                out.add_term(sx * ns + sx2, ty * nt + ty2, u, a.mul(b))
                    .expect("tensor blocks line up");
            }
        }
        out
    }

    /// `A -> T`, `f ↦ graph(f)` for `f: x -> y` stored as a `dim y x dim x` matrix.
    pub fn embed_graph(&self, f: &FqMatrix) -> Morphism {
        let (dy, dx) = (f.rows(), f.cols());
        Morphism::relation(dx, dy, graph(&self.field, f)).expect("graph ambient")
    }

    /// Symmetry `σ_{x,y}: [x] ⊗ [y] -> [y] ⊗ [x]`, the graph of the swap.
    pub fn braiding(&self, x: GenObject, y: GenObject) -> Morphism {
        let (a, b) = (x.dim(), y.dim());
        let mut swap = FqMatrix::zeros(a + b, a + b);
        for i in 0..a {
            swap.set(b + i, i, 1);
        }
        for j in 0..b {
            swap.set(j, a + j, 1);
        }
        self.embed_graph(&swap)
    }

    /// Coevaluation `δ_x: 1 -> [x] ⊗ [x]`.
    pub fn delta(&self, x: GenObject) -> Morphism {
        let d = x.dim();
        Morphism::relation(0, 2 * d, diagonal(d)).expect("diagonal ambient")
    }

    /// Evaluation `ev_x: [x] ⊗ [x] -> 1`.
    pub fn ev(&self, x: GenObject) -> Morphism {
        let d = x.dim();
        Morphism::relation(2 * d, 0, diagonal(d)).expect("diagonal ambient")
    }

    fn generator_trace(&self, f: &Morphism, left: bool) -> Result<Scalar> {
        let x = f.source().as_generator().expect("generator block");
        let id = self.identity(&x.into());
        let middle = if left {
            self.tensor(&id, f)
        } else {
            self.tensor(f, &id)
        };
        let through = self.compose(&middle, &self.delta(x))?;
        let closed = self.compose(&self.ev(x), &through)?;
        Ok(closed.as_scalar().expect("End(1)"))
    }

    fn trace_with(&self, f: &Morphism, left: bool) -> Result<Scalar> {
        if !f.is_endomorphism() {
            return Err(Error::NotEndomorphism);
        }
        let mut acc = Scalar::zero();
        for i in 0..f.source().len() {
            let block = f.block(i, i);
            if block.is_zero() {
                continue;
            }
            acc = acc.add(&self.generator_trace(&block, left)?);
        }
        Ok(acc)
    }

    /// Categorical trace `ev ∘ (F ⊗ id) ∘ δ`, summed over diagonal blocks.
    pub fn trace(&self, f: &Morphism) -> Result<Scalar> {
        self.trace_with(f, false)
    }

    /// The mirror trace `ev ∘ (id ⊗ F) ∘ δ`.
    pub fn left_trace(&self, f: &Morphism) -> Result<Scalar> {
        self.trace_with(f, true)
    }

    /// The pairing matrix `[tr(G_j ∘ F_i)]` between the bases of `Hom(X, Y)`
    /// (rows) and `Hom(Y, X)` (columns).
    pub fn gram_pairing(&self, x: &SumObject, y: &SumObject, max: u128) -> Result<GramMatrix> {
        let rows = self.hom_basis(x, y, max)?;
        let cols = self.hom_basis(y, x, max)?;
        let entries = rows
            .par_iter()
            .map(|f| {
                cols.iter()
                    .map(|g| self.trace(&self.compose(g, f)?))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GramMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn lattice_idempotents(&self, x: GenObject) -> Result<LatticeIdempotents> {
        LatticeIdempotents::new(self, x)
    }

    /// Splits the relation basis of `Hom([x], [y])` into graphs of isomorphisms
    /// (core of full length) and the rest.
    pub fn isom_split(&self, x: GenObject, y: GenObject) -> (Vec<Subspace>, Vec<Subspace>) {
        let (dx, dy) = (x.dim(), y.dim());
        all_subspaces(&self.field, dx + dy)
            .into_iter()
            .partition(|w| dx == dy && core_and_length(&self.field, w, dx).core_dim == dx)
    }
}

/// Gram matrix of the trace pairing together with the bases that index it.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    pub rows: Vec<Morphism>,
    pub cols: Vec<Morphism>,
    pub entries: Vec<Vec<Scalar>>,
}

/// The diagonal `{(a, a)}` of `F_q^d ⊕ F_q^d`.
pub fn diagonal(d: usize) -> Subspace {
    let mut m = FqMatrix::zeros(d, 2 * d);
    for i in 0..d {
        m.set(i, i, 1);
        m.set(i, d + i, 1);
    }
    Subspace::from_rref(m)
}

/// The diagonal of a subspace `y ⊆ x`, sitting inside `x ⊕ x`.
pub fn diagonal_of(y: &Subspace) -> Subspace {
    let d = y.ambient();
    let b = y.basis();
    let m = b.hstack(&b).expect("same rows");
    debug_assert_eq!(m.cols(), 2 * d);
    Subspace::from_rref(m)
}

/// `{(a, f a)} ⊆ x ⊕ y`.
pub fn graph(field: &FqField, f: &FqMatrix) -> Subspace {
    let (dy, dx) = (f.rows(), f.cols());
    let m = FqMatrix::identity(dx)
        .hstack(&f.transpose())
        .expect("graph rows");
    debug_assert_eq!(m.cols(), dx + dy);
    Subspace::span(field, &m)
}

#[cfg(test)]
mod tests;
