use crate::error::Result;
use crate::gfq::{FqField, FqMatrix, Subspace};

/// Core data of a relation `W ⊆ x ⊕ y` viewed as the correspondence
/// `W -> x ⊕ y`: `core W = W / (ker pr_x + ker pr_y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoreInfo {
    pub core_dim: usize,
    pub ker_x_dim: usize,
    pub ker_y_dim: usize,
    /// Least length of an object the relation factors through.
    pub length: usize,
}

pub fn core_and_length(field: &FqField, w: &Subspace, dx: usize) -> CoreInfo {
    let ambient = w.ambient();
    // vectors of W with vanishing x part are the kernel of pr_x, and vice versa
    let ker_x_dim = w.slice_kernel(field, dx, ambient).dim();
    let ker_y_dim = w.slice_kernel(field, 0, dx).dim();
    let core_dim = w.dim() - ker_x_dim - ker_y_dim;
    CoreInfo {
        core_dim,
        ker_x_dim,
        ker_y_dim,
        length: core_dim,
    }
}

/// Relations `V1 ⊆ x ⊕ core` and `V2 ⊆ core ⊕ y` whose composite is `W` with
/// no kernel factor, where `core = F_q^core_dim`.
pub fn core_factorization(field: &FqField, w: &Subspace, dx: usize) -> Result<(Subspace, Subspace, usize)> {
    let b = w.basis();
    let fx = b.col_block(0, dx).transpose();
    let fy = b.col_block(dx, w.ambient()).transpose();
    let k = fx.kernel(field).join(field, &fy.kernel(field))?;
    // rows of `quotient` cut out exactly K, so it is the projection c -> c/K
    let quotient = k.basis().kernel(field).basis();
    let core = quotient.rows();
    let image = |top: &FqMatrix, bottom: &FqMatrix| -> Result<Subspace> {
        Ok(top.vstack(bottom)?.image(field))
    };
    let v1 = image(&fx, &quotient)?;
    let v2 = image(&quotient, &fy)?;
    Ok((v1, v2, core))
}
