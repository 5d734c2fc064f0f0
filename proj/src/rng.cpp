#include "ecs/rng.hpp"

// Header-only; this translation unit just anchors the component in the build.
