/// Cooperative cancellation for long searches.
///
/// Searches poll this every few thousand nodes; once it returns `true` they
/// unwind and report a partial result.
pub trait Cancel {
    fn cancelled(&self) -> bool;
}

impl<F: Fn() -> bool> Cancel for F {
    fn cancelled(&self) -> bool {
        self()
    }
}

/// Never cancels.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeverCancel;

impl Cancel for NeverCancel {
    fn cancelled(&self) -> bool {
        false
    }
}
