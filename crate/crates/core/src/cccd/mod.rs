//! Cone–cocone diagrams of classifiers.

mod build;
mod codeploy;
mod commute;
mod diagram;
mod dot;
mod morphism;

pub use build::{build_composite, build_elementary, cccd_to_qrf};
pub(crate) use build::remove_positions;
pub use codeploy::{co_deployable, joint_diagram, CoDeployment, CrossMaps, Failure};
pub use commute::{check_commutes, check_commutes_with, difference, workers_from_env, CommuteReport, Difference, Half, Witness};
pub use diagram::{token_labels, CoreRule, Diagram, Edge, Leg, Node, Role, RuleKind, MAX_DIAGRAM_WIDTH};
pub use dot::to_dot;
pub use morphism::{
    basis_rotation, fission, fission_parts, fuse, fuse_split, rotate_index, DiagramMorphism, EdgeImage, MorphismKind,
    Step, StepRecord,
};
