# Core arithmetic, modular-form and lattice modules.
