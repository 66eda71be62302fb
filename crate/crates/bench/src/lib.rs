//! Benchmarks for `unipow`; run with `cargo bench -p unipow-bench`.
