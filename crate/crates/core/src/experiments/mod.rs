//! Seeded `G(n, p)` sampling, exhaustive enumeration of labelled graphs and
//! Monte Carlo estimation of graph events.

mod enumerate;
mod estimate;
mod events;
mod sample;

pub use enumerate::{
    enumerate_events, enumerate_labelled, enumerate_labelled_with, graph_from_mask, EnumerateOptions,
    EventTally, LabelledCount, DEFAULT_ENUMERATION_CAP, MAX_ENUMERATION_CAP,
};
pub use estimate::{
    estimate_events, estimate_probability, estimate_probability_with, wilson_interval, Estimate, Z_95,
    Z_999,
};
pub use events::{event_holds, event_holds_with, EventKind, EventSpec};
pub use sample::{sample_gnp, SamplerConfig};
