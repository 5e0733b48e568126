import os
from dotenv import load_dotenv
load_dotenv()

HYPERLINK_STARTS=int(os.getenv("HYPERLINK_STARTS", 200))
HYPERLINK_SEED=int(os.getenv("HYPERLINK_SEED", 0))
HYPERLINK_TOL=float(os.getenv("HYPERLINK_TOL", 1e-10))
HYPERLINK_MAX_ITER=int(os.getenv("HYPERLINK_MAX_ITER", 60))

HYPERLINK_FORMAT=os.getenv("HYPERLINK_FORMAT", "json")
HYPERLINK_OUT=os.getenv("HYPERLINK_OUT", "")  # empty: print only
HYPERLINK_LOG_LEVEL=os.getenv("HYPERLINK_LOG_LEVEL", "WARNING")

# fake | redis | off
HYPERLINK_CACHE=os.getenv("HYPERLINK_CACHE", "off")
HYPERLINK_REDIS_HOST=os.getenv("HYPERLINK_REDIS_HOST", "localhost")
HYPERLINK_REDIS_PORT=int(os.getenv("HYPERLINK_REDIS_PORT", 6379))
