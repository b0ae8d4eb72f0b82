"""Dataset/workload generation, oracle verification and benchmarking."""
