#include "decrsp/parallel.hpp"

#include <omp.h>

namespace decrsp {

int parallel_threads() { return omp_get_max_threads(); }

}  // namespace decrsp
