# Theta-series timing harness for thetaglue.

import sys
import time
import csv
from pathlib import Path

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.thetaglue.core.enumeration import ball_count, component_series, theta_by_enumeration
from src.thetaglue.core.lattice_spec import Family, create_spec
from src.thetaglue.core.lattices import theta_by_cosets, theta_by_theorem
from src.thetaglue.core.modforms import get_cache
from src.thetaglue.core.qseries import quarters


def benchmark_method(name, method, spec, trunc, num_runs: int = 3):
    """Time one method on one spec; series and enumeration caches are rebuilt for every run."""
    print(f"  {name}...")
    times = []
    for _ in range(num_runs):
        for cached in (get_cache, component_series, ball_count):
            cached.cache_clear()
        start = time.perf_counter()
        method(spec, trunc)
        times.append((time.perf_counter() - start) * 1000)  # Convert to milliseconds
    return times


def main():
    """Run benchmarks for the Niemeier specs and two small three-way specs."""
    benchmarks_root = Path(__file__).parent

    print("=== thetaglue Theta Series Benchmark ===")

    specs = [
        ("D24", create_spec(Family.ODD_8M, (3,)), 32),
        ("D12^2", create_spec(Family.EVEN_8M4, (1, 1)), 32),
        ("D8^3", create_spec(Family.ODD_8M, (1, 1, 1)), 32),
        ("D6^4", create_spec(Family.FOUR_BLOCK, (0, 0, 0, 0), epsilon=1), 32),
        ("D4^4", create_spec(Family.EVEN_8M4, (0, 0, 0, 0)), 6),
        ("D8+D8+D16", create_spec(Family.ODD_8M, (1, 1, 2)), 6),
    ]
    methods = [
        ("cosets", theta_by_cosets),
        ("theorem", lambda spec, trunc: theta_by_theorem(spec, trunc, "extended")),
        ("enum", theta_by_enumeration),
    ]

    results = []

    for label, spec, order in specs:
        print(f"\nBenchmarking: {label} ({spec.describe()}), order q^{order}")
        for method_name, method in methods:
            # the enumeration oracle stays at low order
            trunc = quarters(min(order, 6) if method_name == "enum" else order)
            times = benchmark_method(method_name, method, spec, trunc)

            min_time = min(times)
            max_time = max(times)
            avg_time = sum(times) / len(times)

            print(f"    min: {min_time:.2f} ms")
            print(f"    max: {max_time:.2f} ms")
            print(f"    avg: {avg_time:.2f} ms")

            # Store for CSV
            for idx, elapsed in enumerate(times):
                results.append({
                    "spec": label,
                    "method": method_name,
                    "run_index": idx + 1,
                    "elapsed_ms": f"{elapsed:.2f}"
                })

    # Write CSV results
    if results:
        csv_path = benchmarks_root / "results.csv"
        with open(csv_path, 'w', newline='') as f:
            writer = csv.DictWriter(f, fieldnames=["spec", "method", "run_index", "elapsed_ms"])
            writer.writeheader()
            writer.writerows(results)

        print(f"\nResults saved to: {csv_path}")

    print("\n=== Benchmark Complete ===")


if __name__ == "__main__":
    main()
