#ifndef PLR_PLR_HPP
#define PLR_PLR_HPP

#include "plr/canon.hpp"
#include "plr/chromatic.hpp"
#include "plr/classes.hpp"
#include "plr/distribution.hpp"
#include "plr/incexc.hpp"
#include "plr/io.hpp"
#include "plr/oracle.hpp"
#include "plr/permutation.hpp"
#include "plr/poly.hpp"
#include "plr/sade.hpp"
#include "plr/types.hpp"
#include "plr/verify.hpp"

#endif  // PLR_PLR_HPP
