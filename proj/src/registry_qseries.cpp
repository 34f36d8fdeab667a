#include "registry_rows.hpp"

namespace qbc {

void register_qseries_rows(std::vector<IdentityEntry>&) {}

}  // namespace qbc
