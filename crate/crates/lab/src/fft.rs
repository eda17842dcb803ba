use rustfft::FftPlanner;
use std::collections::HashMap;
use std::sync::Arc;
use timoshenko_core::semilinear::Fft;
use timoshenko_core::Complex64;

/// Unnormalised FFTs backed by rustfft, with plans cached per length.
pub struct RustFft {
    planner: FftPlanner<f64>,
    forward: HashMap<usize, Arc<dyn rustfft::Fft<f64>>>,
    inverse: HashMap<usize, Arc<dyn rustfft::Fft<f64>>>,
}

impl Default for RustFft {
    fn default() -> Self {
        Self {
            planner: FftPlanner::new(),
            forward: HashMap::new(),
            inverse: HashMap::new(),
        }
    }
}

impl Fft for RustFft {
    fn forward(&mut self, buf: &mut [Complex64]) {
        let planner = &mut self.planner;
        let plan = self
            .forward
            .entry(buf.len())
            .or_insert_with(|| planner.plan_fft_forward(buf.len()));
        plan.process(buf);
    }

    fn inverse(&mut self, buf: &mut [Complex64]) {
        let planner = &mut self.planner;
        let plan = self
            .inverse
            .entry(buf.len())
            .or_insert_with(|| planner.plan_fft_inverse(buf.len()));
        plan.process(buf);
    }
}
