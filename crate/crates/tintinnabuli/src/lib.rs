//! Tintinnabuli pitch spaces and processes, a deterministic reconstruction
//! of Arvo Pärt's *Summa*, and tools for comparing symbolic scores.

pub mod error;
pub mod evaluate;
pub mod json;
pub mod musicxml;
pub mod pitch;
pub mod plan;
pub mod process;
pub mod score;
pub mod space;
pub mod summa;

pub use error::{Error, Result};
pub use pitch::Pitch;
pub use plan::{PiecePlan, Voice, Voicing};
pub use process::{OrnamentTrack, ProcessKind, RotationDirection, TintinnabuliProcess};
pub use score::{Dur, Score, SyllableCell};
pub use space::{Direction, Melody, PitchSpace, Scale};
pub use summa::{assemble, SummaConfig};

#[cfg(test)]
mod thread_safety {
    // every value type is immutable after construction and freely shareable
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn core_types_are_send_and_sync() {
        assert_send_sync::<crate::PitchSpace>();
        assert_send_sync::<crate::Melody>();
        assert_send_sync::<crate::TintinnabuliProcess>();
        assert_send_sync::<crate::PiecePlan>();
        assert_send_sync::<crate::Score>();
        assert_send_sync::<crate::SummaConfig>();
        assert_send_sync::<crate::evaluate::ErrorReport>();
    }
}
