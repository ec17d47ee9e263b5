#ifndef SWIM_PARALLEL_HPP
#define SWIM_PARALLEL_HPP

namespace swim {

/** Global switch between the OpenMP kernels and the serial reference
 *  implementations. Defaults to parallel when compiled with OpenMP. */
void set_parallel(bool on);
bool parallel_enabled();

}  // namespace swim

#endif
