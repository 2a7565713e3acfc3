#include "ie/config.hpp"

#include "ie/error.hpp"

namespace ie {

void Config::validate() const {
  if (window < 2) raise(ErrorCode::InvalidArgument, "window must be at least 2");
  if (precision < 10) raise(ErrorCode::InvalidArgument, "precision must be at least 10 digits");
  if (horizon < 16) raise(ErrorCode::InvalidArgument, "horizon must be at least 16");
  if (tol <= 0) raise(ErrorCode::InvalidArgument, "tolerance must be positive");
}

}  // namespace ie
