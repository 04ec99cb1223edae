//! Shared inputs for the pipeline benchmarks.

use archseam_core::synth::{generate, SynthConfig};
use archseam_core::{adl, ArchitectureModel};

/// Element counts the benchmarks sweep over.
pub const SIZES: [usize; 3] = [50, 100, 200];

/// A generated model of about `size` elements with a few gaps.
pub fn model(size: usize) -> ArchitectureModel {
    generate(
        0xA5C3 ^ size as u64,
        &SynthConfig {
            target_elements: size,
            defect_rate: 0.05,
        },
    )
}

/// Canonical text of [`model`], the input for load benchmarks.
pub fn source(size: usize) -> String {
    adl::serialize(&model(size))
}
