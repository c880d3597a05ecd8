//! Binary products, coequalisers and the maps they induce.

mod coequalizer;
mod product;

pub use coequalizer::{
    class_label, coeq_factor, coequalizer, coequalizer_named, CoequalizerResult,
};
pub use product::{
    pair_into_product, pair_label, product, product_cell_name, product_of_morphisms, ProductCell,
    ProductResult,
};

use crate::error::Result;
use crate::morphism::Morphism;

/// The canonical map `P → C × B` out of the coequaliser `P` of
/// `α1 × 1, α2 × 1`, induced by the cocone `β × 1 : A × B → C × B`.
pub fn comparison_map(
    ce_p: &CoequalizerResult,
    prod_ab: &ProductResult,
    prod_cb: &ProductResult,
    beta: &Morphism,
) -> Result<Morphism> {
    let beta_times_one = product_of_morphisms(beta, prod_ab, prod_cb)?;
    coeq_factor(ce_p, &beta_times_one)
}
