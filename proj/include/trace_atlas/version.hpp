#pragma once

#define TRACE_ATLAS_VERSION "0.1.0"
