//! U_p and the Hida ordinary projector on finite models.

pub mod model;
pub mod projector;
pub mod qexp;

pub use model::LinearModel;
pub use projector::{ordinary_projector, planted_model, tensor_projector, twist_stability_check, up_relation_check, TwistReport};
pub use qexp::{up_on_qexp, Side};
