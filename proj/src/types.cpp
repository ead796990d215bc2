#include "ustat/types.hpp"

namespace ustat {

Sample::Sample(DataMatrix data) : data_(std::move(data)) {
  if (data_.rows() < 2) throw InputError("Sample needs at least 2 observations");
  if (data_.cols() < 1) throw InputError("Sample needs at least 1 coordinate");
  if (!data_.allFinite()) throw InputError("Sample contains NaN or infinite entries");
}

}  // namespace ustat
