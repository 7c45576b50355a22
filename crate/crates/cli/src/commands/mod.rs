pub mod adjust;
pub mod compare;
pub mod gen_data;
pub mod report;
pub mod rfe;
pub mod train;
pub mod verify;

pub use adjust::cmd_adjust;
pub use compare::{cmd_compare, Reference};
pub use gen_data::cmd_gen_data;
pub use report::cmd_report;
pub use rfe::cmd_rfe;
pub use train::cmd_train;
pub use verify::cmd_verify;
