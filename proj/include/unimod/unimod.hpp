#ifndef UNIMOD_UNIMOD_HPP
#define UNIMOD_UNIMOD_HPP

#include "unimod/clique.hpp"
#include "unimod/config.hpp"
#include "unimod/error.hpp"
#include "unimod/forms.hpp"
#include "unimod/orthosets.hpp"
#include "unimod/report.hpp"
#include "unimod/ring.hpp"
#include "unimod/vectors.hpp"

#endif  // UNIMOD_UNIMOD_HPP
