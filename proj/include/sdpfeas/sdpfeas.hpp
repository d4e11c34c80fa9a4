#pragma once

#include "sdpfeas/bounds.hpp"
#include "sdpfeas/cli.hpp"
#include "sdpfeas/confusion.hpp"
#include "sdpfeas/errors.hpp"
#include "sdpfeas/hazard.hpp"
#include "sdpfeas/io.hpp"
#include "sdpfeas/oracle.hpp"
#include "sdpfeas/outcome.hpp"
#include "sdpfeas/report.hpp"
#include "sdpfeas/rng.hpp"
