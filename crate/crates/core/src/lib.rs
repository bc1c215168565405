pub mod apery_resolution;
pub mod assoc_graded;
pub mod complex;
pub mod emit;
pub mod error;
pub mod field;
pub mod kunz;
pub mod linalg;
pub mod m4_special;
pub mod oracle;
pub mod ring;
pub mod semigroup;
pub mod series_golod;
pub mod symbolic;
