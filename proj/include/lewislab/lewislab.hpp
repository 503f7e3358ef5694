#pragma once

#include "eichler.hpp"
#include "exact_linalg.hpp"
#include "induced_rep.hpp"
#include "int_mat.hpp"
#include "lewis.hpp"
#include "mat2.hpp"
#include "polyspace.hpp"
#include "psl2.hpp"
#include "report.hpp"
#include "version.hpp"
