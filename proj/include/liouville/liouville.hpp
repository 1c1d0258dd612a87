#pragma once

#include "liouville/numerics/complex.hpp"
#include "liouville/numerics/errors.hpp"
#include "liouville/numerics/parallel.hpp"
#include "liouville/numerics/quadrature.hpp"

#include "liouville/specialfn/double_gamma.hpp"
#include "liouville/specialfn/eta.hpp"
#include "liouville/specialfn/gamma.hpp"
#include "liouville/specialfn/params.hpp"
#include "liouville/specialfn/upsilon.hpp"

#include "liouville/structure/bulk_boundary.hpp"
#include "liouville/structure/dozz.hpp"
#include "liouville/structure/fzz.hpp"

#include "liouville/virasoro/block.hpp"
#include "liouville/virasoro/partition.hpp"
#include "liouville/virasoro/verma.hpp"

#include "liouville/bootstrap/bootstrap.hpp"
#include "liouville/bootstrap/lqg.hpp"
