//! Criterion benchmarks for the field and polynomial kernels (`kernels`) and
//! for building and checking the modular polynomial (`phi`).
