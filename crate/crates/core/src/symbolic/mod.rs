//! Binary words, infinite streams, shifts and the dyadic metrics.

mod dyadic;
mod metric;
mod stream;
mod word;

pub use dyadic::Dyadic;
pub use metric::{
    agreement_radius, metric, metric_at_least, metric_at_least_with_cap, Agreement, Decision,
    DyadicEnclosure, Window, DEFAULT_RADIUS_CAP,
};
pub use stream::{Kind, Rule, Sequence, ShiftedStream, SymbolStream};
pub use word::{FiniteWord, Symbol};
