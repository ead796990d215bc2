#pragma once

#include <string>

#include "ustat/types.hpp"

namespace ustat::bench {

// Reads a comma-separated numeric matrix. A single non-numeric first row is
// treated as a header. Ragged rows, unparsable fields and non-finite values
// are rejected with the offending line and column named in the message.
Sample ingest_csv(const std::string& path);

// Same parsing rules without the Sample constraints; used for matrix inputs
// such as a user-supplied covariance.
DataMatrix read_csv_matrix(const std::string& path);

// Writes with 17 significant digits so a read-back reproduces every double
// exactly.
void write_csv(const std::string& path, const DataMatrix& data);

}  // namespace ustat::bench
