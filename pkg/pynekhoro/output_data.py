## @file output_data.py
#  @brief Container for the results of the certificate and frequency computations
#


## Used to return the output data
#
# The function filling it sets its attributes, `successful` included.
class OutputData:
    def __init__(self):
        self.successful = False
