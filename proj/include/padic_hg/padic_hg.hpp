#pragma once

#include "padic_hg/error.hpp"
#include "padic_hg/rational.hpp"
#include "padic_hg/padic.hpp"
#include "padic_hg/dwork_chain.hpp"
#include "padic_hg/frobenius.hpp"
#include "padic_hg/series.hpp"
#include "padic_hg/hyper.hpp"
#include "padic_hg/interp.hpp"
#include "padic_hg/verify.hpp"
#include "padic_hg/io.hpp"
#include "padic_hg/suite.hpp"
