//! Generic constructions over any [`Category`](crate::category::Category).

pub mod exact;
pub mod grid;
pub mod snake;

pub use exact::{check_exact_at, check_long_exact, check_long_exact_auto, Joint, LongExactVerdict};
pub use grid::{full_three_by_three, induced_kernel_sequence, three_by_three_dual, Grid, KernelGrid};
pub use snake::{
    inflation_cancellation, inflation_cancellation_auto, snake, snake_extended, snake_naturality, SnakeDiagram,
    SnakeResult,
};
