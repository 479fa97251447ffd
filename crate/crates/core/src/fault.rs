//! Switches that plant known defects in the kernel.
//!
//! Without the `fault-injection` feature every switch reads as off.

#[cfg(feature = "fault-injection")]
mod switches {
    use std::sync::atomic::{AtomicBool, Ordering};

    static SATURATION_OFF_BY_ONE: AtomicBool = AtomicBool::new(false);

    /// Saturation by an ideal stops one quotient step short of stabilizing.
    pub fn set_saturation_off_by_one(on: bool) {
        SATURATION_OFF_BY_ONE.store(on, Ordering::SeqCst);
    }

    pub(crate) fn saturation_off_by_one() -> bool {
        SATURATION_OFF_BY_ONE.load(Ordering::SeqCst)
    }
}

#[cfg(not(feature = "fault-injection"))]
mod switches {
    #[inline]
    pub(crate) fn saturation_off_by_one() -> bool {
        false
    }
}

#[cfg(feature = "fault-injection")]
pub use switches::set_saturation_off_by_one;
pub(crate) use switches::saturation_off_by_one;
