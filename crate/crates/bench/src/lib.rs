//! Criterion benchmarks for `crnconn`; run them with `cargo bench -p crnconn-bench`.
