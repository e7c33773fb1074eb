//! Finite-group gauge theory on graphs: cylindrical functions, flatness
//! projected amplitudes, and the image classifier built on them.

mod cyclo;
mod function;
mod graph;
mod group;
mod image;

pub use cyclo::{cyclotomic_polynomial, Cyclo};
pub use function::{
    decode_config, delta_inner, encode_config, gauge_average, intertwiner_dimension, is_gauge_invariant,
    kinematic_inner, lift_subdivided, partition_function, physical_inner, table_size, CharacterProduct,
    CylindricalFunction, SpinNetworkState, MAX_TABLE,
};
pub use graph::{holonomy, sphere, torus, FaceSet, Graph, GraphNode, Link, Step};
pub use group::{FiniteGroup, Irrep};
pub use image::{
    encode_image, image_state, image_to_tqnn, tqnn_classify, Classification, EncodeMode, EncodedImage, Score,
    TqnnEncoding, TqnnImage,
};
