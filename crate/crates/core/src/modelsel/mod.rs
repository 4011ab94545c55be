//! Regularization-path selection by leave-one-out cross-validation, and the
//! one-vs-all reduction for alphabets with more than two labels.

mod loocv;
mod ova;

pub use loocv::{loocv_select, loocv_select_for, train_binary, BinaryModel, CvConfig, CvReport, LambdaChoice, LambdaGrid};
pub use ova::{em_one_vs_all, one_vs_all_predict, one_vs_all_train, ClassModel, OneVsAllModel};
