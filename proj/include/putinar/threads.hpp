#pragma once

namespace putinar {

// Applies the PUTINAR_KIT_THREADS cap (env var) to the OpenMP runtime.
// No-op when OpenMP is absent or the variable is unset.
void apply_thread_cap();

int max_threads();

}  // namespace putinar
